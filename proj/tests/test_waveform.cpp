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

#include "bdris/errors.hpp"
#include "bdris/waveform.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace bdris;
using bdris::testing::random_cvector;
using bdris::testing::rel_err;

TEST_CASE("scaled matched filter")
{
    Rng rng(1);
    const CVector h = random_cvector(5, rng);
    const CVector uniform = smf_init(h, 2.0, 0.0);
    for (int n = 0; n < 5; ++n)
    {
        CHECK(std::abs(uniform(n)) == doctest::Approx(std::sqrt(2.0 * 2.0 / 5)).epsilon(1e-14));
        CHECK(std::abs(std::arg(uniform(n) * h(n))) < 1e-12);
    }
    for (double beta : {0.5, 1.0, 2.0, 3.0})
        CHECK(waveform_power(smf_init(h, 3.0, beta)) == doctest::Approx(3.0).epsilon(1e-14));

    CVector one(1);
    one(0) = std::polar(0.2, 0.9);
    const CVector s1 = smf_init(one, 5.0, 1.0);
    CHECK(std::abs(s1(0) - std::polar(std::sqrt(10.0), -0.9)) < 1e-13);
    CHECK_THROWS_AS(smf_init(CVector::Zero(3), 1.0, 1.0), SignalError);
}

TEST_CASE("dual variable")
{
    RVector g = RVector::Constant(4, 0.3);
    CHECK(dual_lambda(g, 2.0) == doctest::Approx(0.3 * std::sqrt(4.0 / 4.0)).epsilon(1e-14));
    RVector one(1);
    one << 2.0;
    CHECK(dual_lambda(one, 2.0) == doctest::Approx(1.0));
    Rng rng(2);
    const RVector r = random_cvector(6, rng).cwiseAbs();
    const RVector star = r / dual_lambda(r, 7.0);
    CHECK(0.5 * star.squaredNorm() == doctest::Approx(7.0).epsilon(1e-13));
    CHECK_THROWS_AS(dual_lambda(RVector::Zero(3), 1.0), SignalError);
}

TEST_CASE("single carrier converges immediately")
{
    const RectifierParams k;
    CVector h(1);
    h(0) = std::polar(0.01, 0.3);
    const double pt = 4.0;
    const auto r = it_wf(h, pt, WaveformOptConfig{}, k);
    CHECK(r.iterations <= 2);
    CHECK(r.converged);
    CHECK(std::abs(r.weights(0)) == doctest::Approx(std::sqrt(2 * pt)).epsilon(1e-12));
    const double hb2 = 1e-4;
    CHECK(r.idc_trace.back() == doctest::Approx(k.k2 * pt * hb2 + 1.5 * k.k4 * pt * pt * hb2 * hb2).epsilon(1e-12));
}

TEST_CASE("ascent, budget and KKT point")
{
    const RectifierParams k;
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int n = 2 + trial % 7;
        const CVector h = random_cvector(n, rng, 1e-4);
        const double pt = 100.0;
        const auto r = it_wf(h, pt, WaveformOptConfig{}, k);
        const double init = idc(smf_init(h, pt, 1.0), h, k);
        CHECK(r.idc_trace.front() == doctest::Approx(init).epsilon(1e-14));
        for (std::size_t i = 1; i < r.idc_trace.size(); ++i)
            CHECK(r.idc_trace[i] >= r.idc_trace[i - 1] - 1e-12);
        CHECK(r.idc_trace.back() >= init - 1e-12);
        CHECK(waveform_power(r.weights) <= pt + 1e-9);
        CHECK(waveform_power(r.weights) == doctest::Approx(pt).epsilon(1e-6));

        // phases matched to the channel
        for (int i = 0; i < n; ++i)
            if (std::abs(r.weights(i)) > 1e-12)
                CHECK(std::abs(std::arg(r.weights(i) * h(i))) < 1e-9);

        if (n == 4)
        {
            const RVector s = r.weights.cwiseAbs();
            const RVector g = waveform_gradient(s, h.cwiseAbs(), k);
            const double lambda = dual_lambda(g, pt);
            CHECK((g - lambda * s).norm() / g.norm() <= 1e-4);
        }
    }
}

TEST_CASE("phase perturbations do not help")
{
    const RectifierParams k;
    Rng rng(4);
    const CVector h = random_cvector(5, rng, 1e-3);
    const auto r = it_wf(h, 10.0, WaveformOptConfig{}, k);
    const double base = idc(r.weights, h, k);
    for (int n = 0; n < 5; ++n)
        for (double d : {-0.01, 0.01})
        {
            CVector s = r.weights;
            s(n) *= std::polar(1.0, d);
            CHECK(idc(s, h, k) <= base + 1e-15 * base);
        }
}

TEST_CASE("scale covariance of the amplitude profile")
{
    Rng rng(5);
    const CVector h = random_cvector(5, rng, 1e-3);
    const double c = 7.0;
    const RectifierParams k;
    const RectifierParams scaled{k.k2 / (c * c), k.k4 / std::pow(c, 4)};
    const auto a = it_wf(h, 10.0, WaveformOptConfig{}, k);
    const auto b = it_wf(c * h, 10.0, WaveformOptConfig{}, scaled);
    CHECK((a.weights.cwiseAbs() - b.weights.cwiseAbs()).norm() <= 1e-9 * a.weights.norm());
}

TEST_CASE("warm start keeps the budget")
{
    Rng rng(6);
    const CVector h = random_cvector(4, rng, 1e-3);
    const RectifierParams k;
    const RVector start = RVector::Constant(4, 9.0);
    const auto r = it_wf(h, 2.0, WaveformOptConfig{}, k, start);
    const double init = idc(smf_init(h, 2.0, 0.0), h, k);
    CHECK(r.idc_trace.front() == doctest::Approx(init).epsilon(1e-13));
    CHECK(waveform_power(r.weights) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("configuration validation")
{
    WaveformOptConfig c;
    c.rho = 0.0;
    CHECK_THROWS_AS(c.validate(), ContractError);
    c.rho = 1.0;
    c.tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), ContractError);
}
