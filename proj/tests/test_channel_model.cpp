// bdris-wpt: beamforming and waveform design for BD-RIS assisted wireless power transfer
// Copyright (C) 2026 The bdris-wpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bdris/channel_model.hpp"
#include "bdris/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace bdris;

namespace
{
ChannelSetup wifi_setup(int m, int n, double kappa, double alpha)
{
    ChannelSetup s;
    s.plan.subcarriers = n;
    s.geometry.elements = m;
    s.link.kappa = kappa;
    s.link.alpha = alpha;
    return s;
}

double gain_spread(const CVector &h)
{
    const RVector a = h.cwiseAbs();
    return (a.maxCoeff() - a.minCoeff()) / a.mean();
}
} // namespace

TEST_CASE("path gain follows the inverse-square law")
{
    CHECK(path_gain(1.0) == doctest::Approx(1e-4).epsilon(1e-15));
    CHECK(path_gain(2.0) == doctest::Approx(2.5e-5).epsilon(1e-15));
    CHECK(path_gain(10.0) == doctest::Approx(1e-6).epsilon(1e-15));
    CHECK_THROWS_AS(path_gain(0.0), DomainError);
    CHECK_THROWS_AS(path_gain(-1.0), DomainError);
}

TEST_CASE("carrier plan frequencies")
{
    CarrierPlan plan;
    plan.subcarriers = 8;
    CHECK(plan.spacing() * plan.subcarriers == doctest::Approx(plan.bandwidth));
    for (int n = 1; n < 8; ++n)
        CHECK(plan.frequency(n) > plan.frequency(n - 1));
    plan.subcarriers = 0;
    CHECK_THROWS_AS(plan.validate(), DomainError);
}

TEST_CASE("UPA steering vector")
{
    Geometry g;
    const double spacing = kSpeedOfLight / (2.0 * 2.4e9);
    g.elevation = 0.0;
    g.azimuth = 0.0;
    g.elements = 9;
    const CVector broadside = upa_los_vector(g, spacing, 2.4e9);
    CHECK((broadside - CVector::Ones(9)).norm() < 1e-14);

    g.elements = 1;
    g.elevation = 0.4;
    CHECK(std::abs(upa_los_vector(g, spacing, 2.4e9)(0) - cd(1.0)) < 1e-15);

    g.elements = 12;
    g.elevation = kPi / 6;
    g.azimuth = kPi / 6;
    const CVector v = upa_los_vector(g, spacing, 2.405e9);
    CHECK(v.norm() == doctest::Approx(std::sqrt(12.0)).epsilon(1e-14));
    for (int m = 0; m < 12; ++m)
        CHECK(std::abs(v(m)) == doctest::Approx(1.0).epsilon(1e-14));

    // Element 1 sits one half-wavelength along x: phase pi sin(theta) cos(phi) at f_c.
    const CVector v0 = upa_los_vector(g, spacing, 2.4e9);
    const double expected = kPi * std::sin(kPi / 6) * std::cos(kPi / 6);
    CHECK(std::arg(v0(1)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("tap profile normalization and delays")
{
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial)
    {
        const TapProfile p = TapProfile::draw(18, 0.1, 10e6, rng);
        CHECK_NOTHROW(p.validate());
        double total = 0.0;
        for (double v : p.power)
        {
            CHECK(v >= 0.0);
            total += v;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        CHECK(p.delay.front() == 0.0);
        CHECK(p.delay.back() == doctest::Approx(2.0 / (0.1 * 10e6)));
        for (int l = 1; l < 18; ++l)
            CHECK(p.delay[l] - p.delay[l - 1] == doctest::Approx(p.delay[1]));
    }
}

TEST_CASE("single zero-delay tap is frequency flat")
{
    TapProfile p;
    p.power = {1.0};
    p.delay = {0.0};
    CVector g(1);
    g(0) = cd(0.3, -0.7);
    const cd a = nlos_frequency_response(p, g, 2.4e9);
    const cd b = nlos_frequency_response(p, g, 2.41e9);
    CHECK(std::abs(a - b) < 1e-15);
    CHECK(std::abs(a - g(0)) < 1e-15);
}

TEST_CASE("NLoS response has unit mean power")
{
    Rng rng(11);
    double acc = 0.0;
    const int draws = 20000;
    for (int d = 0; d < draws; ++d)
    {
        const TapProfile p = TapProfile::draw(18, 0.1, 10e6, rng);
        CVector g(18);
        for (int l = 0; l < 18; ++l)
            g(l) = rng.complex_normal(p.power[l]);
        acc += std::norm(nlos_frequency_response(p, g, 2.4e9 + 3 * 1.25e6));
    }
    CHECK(acc / draws == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("frequency selectivity decreases with alpha")
{
    double spread_low = 0.0;
    double spread_mid = 0.0;
    double spread_high = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        spread_low += gain_spread(generate_channel_set(wifi_setup(1, 8, 0.0, 0.1), seed).incident.col(0));
        spread_mid += gain_spread(generate_channel_set(wifi_setup(1, 8, 0.0, 1.0), seed).incident.col(0));
        spread_high += gain_spread(generate_channel_set(wifi_setup(1, 8, 0.0, 10.0), seed).incident.col(0));
    }
    CHECK(spread_high < spread_mid);
    CHECK(spread_mid < spread_low);
}

TEST_CASE("Rician combination")
{
    const CVector los = CVector::Constant(3, cd(1.0, 0.0));
    const CVector nlos = CVector::Constant(3, cd(0.0, 2.0));
    CHECK((rician_combine(0.0, los, nlos) - nlos).norm() < 1e-15);
    CHECK((rician_combine(kInfiniteKappa, los, nlos) - los).norm() < 1e-15);
    CHECK((rician_combine(1.0, los, nlos) - std::sqrt(0.5) * (los + nlos)).norm() < 1e-15);
    CHECK_THROWS_AS(rician_combine(-1.0, los, nlos), DomainError);

    // Mean power is preserved when both parts have equal expected norm.
    Rng rng(5);
    double acc = 0.0;
    const int draws = 20000;
    for (int d = 0; d < draws; ++d)
    {
        CVector l(4), n(4);
        for (int i = 0; i < 4; ++i)
        {
            l(i) = std::polar(1.0, 2 * kPi * rng.uniform());
            n(i) = rng.complex_normal();
        }
        acc += rician_combine(3.0, l, n).squaredNorm();
    }
    CHECK(acc / draws == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("channel sets are deterministic and scaled")
{
    const ChannelSetup s = wifi_setup(4, 4, 0.0, 0.1);
    const auto a = generate_channel_set(s, 42);
    const auto b = generate_channel_set(s, 42);
    CHECK(a.incident == b.incident);
    CHECK(a.reflective == b.reflective);
    CHECK_FALSE(a.direct.has_value());
    CHECK((a.incident - a.reflective).norm() > 0.0);

    double power = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const auto c = generate_channel_set(s, seed);
        power += c.incident.squaredNorm();
        count += static_cast<int>(c.incident.size());
    }
    CHECK(std::sqrt(power / count) == doctest::Approx(std::sqrt(path_gain(2.0))).epsilon(0.05));
}

TEST_CASE("pure LoS hops differ across subcarriers only in phase")
{
    const auto ch = generate_channel_set(wifi_setup(9, 4, kInfiniteKappa, 0.1), 3);
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 9; ++m)
            CHECK(std::abs(ch.incident(n, m)) == doctest::Approx(std::sqrt(path_gain(2.0))).epsilon(1e-12));
    // Relative element phases move by at most 2*pi*df*D/c, D the element separation.
    const CarrierPlan plan = wifi_setup(9, 4, kInfiniteKappa, 0.1).plan;
    const double lambda = kSpeedOfLight / plan.frequency(0);
    const double separation = std::hypot(1.0, 2.0) * lambda / 2.0;
    const double bound = 2.0 * kPi * (plan.frequency(3) - plan.frequency(0)) * separation / kSpeedOfLight;
    const cd r0 = ch.incident(0, 5) / ch.incident(0, 0);
    const cd r3 = ch.incident(3, 5) / ch.incident(3, 0);
    CHECK(std::abs(r0 - r3) <= bound * (1.0 + 1e-9));
    CHECK(std::abs(r0 - r3) > 0.0);
}

TEST_CASE("direct link is optional")
{
    ChannelSetup s = wifi_setup(4, 4, 0.0, 0.1);
    s.link.direct_link = true;
    const auto ch = generate_channel_set(s, 9);
    REQUIRE(ch.direct.has_value());
    CHECK(ch.direct->size() == 4);
    CHECK(ch.has_direct());
}
