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
#include "bdris/channel_model.hpp"

#include "bdris/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace bdris
{
void CarrierPlan::validate() const
{
    if (subcarriers < 1)
        throw DomainError("CarrierPlan: at least one subcarrier required");
    if (!(lowest_frequency > 0.0) || !(bandwidth > 0.0) || !std::isfinite(lowest_frequency) ||
        !std::isfinite(bandwidth))
        throw DomainError("CarrierPlan: frequencies must be positive and finite");
}

void Geometry::validate() const
{
    if (elements < 1)
        throw DomainError("Geometry: at least one element required");
    if (!(d_incident > 0.0) || !(d_reflective > 0.0) || !(d_direct > 0.0))
        throw DomainError("Geometry: distances must be positive");
    const auto in_range = [](double a) { return a >= 0.0 && a <= kPi / 2.0 + 1e-12; };
    if (!in_range(elevation) || !in_range(azimuth))
        throw DomainError("Geometry: angles must lie in [0, pi/2]");
}

TapProfile TapProfile::draw(int taps, double alpha, double bandwidth, Rng &rng)
{
    if (taps < 1)
        throw DomainError("TapProfile: at least one tap required");
    if (!(alpha > 0.0) || !(bandwidth > 0.0))
        throw DomainError("TapProfile: alpha and bandwidth must be positive");
    TapProfile p;
    p.alpha = alpha;
    p.power.resize(taps);
    p.delay.resize(taps);
    for (auto &v : p.power)
        v = rng.uniform();
    double total = std::accumulate(p.power.begin(), p.power.end(), 0.0);
    if (total <= 0.0)
    {
        std::fill(p.power.begin(), p.power.end(), 1.0);
        total = taps;
    }
    for (auto &v : p.power)
        v /= total;
    const double max_delay = 2.0 / (alpha * bandwidth);
    for (int l = 0; l < taps; ++l)
        p.delay[l] = taps == 1 ? 0.0 : max_delay * l / (taps - 1);
    return p;
}

void TapProfile::validate() const
{
    if (power.empty() || power.size() != delay.size())
        throw DomainError("TapProfile: power and delay sizes differ");
    double total = 0.0;
    for (double p : power)
    {
        if (p < 0.0)
            throw DomainError("TapProfile: negative tap power");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DomainError("TapProfile: tap powers must sum to one");
}

void LinkParams::validate() const
{
    if (std::isnan(kappa) || kappa < 0.0)
        throw DomainError("LinkParams: Rician factor must be non-negative");
    if (!(alpha > 0.0))
        throw DomainError("LinkParams: alpha must be positive");
    if (taps < 1)
        throw DomainError("LinkParams: at least one tap required");
    if (!(reference_gain > 0.0))
        throw DomainError("LinkParams: reference gain must be positive");
}

void ChannelSetup::validate() const
{
    plan.validate();
    geometry.validate();
    link.validate();
}

bool ChannelRealization::has_direct() const
{
    return direct.has_value() && direct->size() > 0 && direct->cwiseAbs().maxCoeff() > 0.0;
}

double path_gain(double distance, double reference_gain)
{
    if (!(distance > 0.0) || !std::isfinite(distance))
        throw DomainError("path_gain: distance must be positive, got " + std::to_string(distance));
    return reference_gain / (distance * distance);
}

CVector upa_los_vector(const Geometry &geometry, double spacing, double frequency)
{
    const int m_count = geometry.elements;
    const int rows = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m_count))));
    const int cols = (m_count + rows - 1) / rows;
    const double k = 2.0 * kPi * frequency / kSpeedOfLight;
    const double ux = std::sin(geometry.elevation) * std::cos(geometry.azimuth);
    const double uy = std::sin(geometry.elevation) * std::sin(geometry.azimuth);
    CVector v(m_count);
    for (int m = 0; m < m_count; ++m)
    {
        const int row = m / cols;
        const int col = m % cols;
        const double phase = k * spacing * (col * ux + row * uy);
        v(m) = std::polar(1.0, phase);
    }
    return v;
}

cd nlos_frequency_response(const TapProfile &taps, const CVector &tap_gains, double frequency)
{
    if (tap_gains.size() != taps.taps())
        throw ContractError("nlos_frequency_response: one gain per tap required");
    cd h = 0.0;
    for (int l = 0; l < taps.taps(); ++l)
        h += tap_gains(l) * std::polar(1.0, 2.0 * kPi * frequency * taps.delay[l]);
    return h;
}

CVector rician_combine(double kappa, const CVector &los, const CVector &nlos)
{
    if (std::isnan(kappa) || kappa < 0.0)
        throw DomainError("rician_combine: Rician factor must be non-negative");
    if (los.size() != nlos.size())
        throw ContractError("rician_combine: size mismatch");
    if (std::isinf(kappa))
        return los;
    return std::sqrt(kappa / (kappa + 1.0)) * los + std::sqrt(1.0 / (kappa + 1.0)) * nlos;
}

CMatrix generate_hop(const ChannelSetup &setup, double distance, int elements, Rng &rng)
{
    const CarrierPlan &plan = setup.plan;
    const int n_count = plan.subcarriers;
    const double amplitude = std::sqrt(path_gain(distance, setup.link.reference_gain));
    const double spacing = kSpeedOfLight / (2.0 * plan.lowest_frequency);

    Geometry geo = setup.geometry;
    geo.elements = elements;

    // Tap gains are drawn per element so that the NLoS part is spatially white.
    const TapProfile taps = TapProfile::draw(setup.link.taps, setup.link.alpha, plan.bandwidth, rng);
    CMatrix gains(taps.taps(), elements);
    for (int m = 0; m < elements; ++m)
        for (int l = 0; l < taps.taps(); ++l)
            gains(l, m) = rng.complex_normal(taps.power[l]);

    CMatrix hop(n_count, elements);
    for (int n = 0; n < n_count; ++n)
    {
        const double f = plan.frequency(n);
        CVector los = upa_los_vector(geo, spacing, f) * std::polar(1.0, -2.0 * kPi * f * distance / kSpeedOfLight);
        CVector nlos(elements);
        for (int m = 0; m < elements; ++m)
            nlos(m) = nlos_frequency_response(taps, gains.col(m), f);
        hop.row(n) = amplitude * rician_combine(setup.link.kappa, los, nlos).transpose();
    }
    return hop;
}

ChannelRealization generate_channel_set(const ChannelSetup &setup, std::uint64_t seed)
{
    setup.validate();
    ChannelRealization out;
    out.seed = seed;
    out.kappa = setup.link.kappa;
    const int m_count = setup.geometry.elements;

    Rng rng_i(derive_seed(seed, Stream::incident));
    out.incident = generate_hop(setup, setup.geometry.d_incident, m_count, rng_i);
    Rng rng_r(derive_seed(seed, Stream::reflective));
    out.reflective = generate_hop(setup, setup.geometry.d_reflective, m_count, rng_r);
    if (setup.link.direct_link)
    {
        Rng rng_d(derive_seed(seed, Stream::direct));
        out.direct = generate_hop(setup, setup.geometry.d_direct, 1, rng_d).col(0);
    }
    return out;
}
} // namespace bdris
