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
#include "bdris/rectenna.hpp"

#include "bdris/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bdris
{
void RectifierParams::validate() const
{
    if (!(k2 > 0.0) || !(k4 > 0.0) || !std::isfinite(k2) || !std::isfinite(k4))
        throw DomainError("RectifierParams: K2 and K4 must be positive");
}

double idc(const CVector &s, const CVector &h, const RectifierParams &params)
{
    if (s.size() != h.size())
        throw ContractError("idc: waveform and channel lengths differ");
    return idc_from_products(s.cwiseProduct(h), params);
}

double idc_from_products(const CVector &y, const RectifierParams &params)
{
    const int n_count = static_cast<int>(y.size());
    double second = 0.0;
    for (int n = 0; n < n_count; ++n)
        second += std::norm(y(n));

    // n3 = n0 + n1 - n2 must fall inside [0, N).
    cd fourth = 0.0;
    for (int n0 = 0; n0 < n_count; ++n0)
        for (int n1 = 0; n1 < n_count; ++n1)
        {
            const cd a = std::conj(y(n0) * y(n1));
            for (int n2 = 0; n2 < n_count; ++n2)
            {
                const int n3 = n0 + n1 - n2;
                if (n3 < 0 || n3 >= n_count)
                    continue;
                fourth += a * y(n2) * y(n3);
            }
        }
    return 0.5 * params.k2 * second + 0.375 * params.k4 * fourth.real();
}

CVector idc_product_gradient(const CVector &y, const RectifierParams &params)
{
    const int n_count = static_cast<int>(y.size());
    CVector w = 0.5 * params.k2 * y;
    for (int n = 0; n < n_count; ++n)
    {
        cd acc = 0.0;
        for (int n1 = 0; n1 < n_count; ++n1)
            for (int n2 = 0; n2 < n_count; ++n2)
            {
                const int n3 = n + n1 - n2;
                if (n3 >= 0 && n3 < n_count)
                    acc += std::conj(y(n1)) * y(n2) * y(n3);
            }
        w(n) += 0.75 * params.k4 * acc;
    }
    return w;
}

CVector autocorrelation(const CVector &y)
{
    const int n_count = static_cast<int>(y.size());
    CVector r = CVector::Zero(n_count);
    for (int k = 0; k < n_count; ++k)
        for (int n = 0; n + k < n_count; ++n)
            r(k) += y(n + k) * std::conj(y(n));
    return r;
}

double idc_from_autocorrelation(const CVector &r, const RectifierParams &params)
{
    if (r.size() == 0)
        return 0.0;
    const double r0 = r(0).real();
    double lagged = 0.0;
    for (Eigen::Index k = 1; k < r.size(); ++k)
        lagged += std::norm(r(k));
    return 0.5 * params.k2 * r0 + 0.375 * params.k4 * r0 * r0 + 0.75 * params.k4 * lagged;
}

std::vector<double> received_signal(const CVector &s, const CVector &h, const CarrierPlan &plan, double oversampling)
{
    if (s.size() != h.size() || s.size() != plan.subcarriers)
        throw ContractError("received_signal: lengths must match the carrier plan");
    if (!(oversampling >= 8.0))
        throw ContractError("received_signal: oversampling below 8");
    const double period = 1.0 / plan.spacing();
    const double top = plan.lowest_frequency + plan.bandwidth;
    const auto samples = static_cast<std::size_t>(std::ceil(oversampling * top * period));
    const double dt = period / static_cast<double>(samples);

    std::vector<double> y(samples, 0.0);
    for (Eigen::Index n = 0; n < s.size(); ++n)
    {
        const cd c = s(n) * h(n);
        if (c == cd(0.0))
            continue;
        const double f = plan.frequency(static_cast<int>(n));
        for (std::size_t i = 0; i < samples; ++i)
        {
            // Reduce the phase modulo one cycle before calling cos to keep full precision.
            const double cycles = f * dt * static_cast<double>(i);
            const double frac = cycles - std::floor(cycles);
            y[i] += std::abs(c) * std::cos(2.0 * kPi * frac + std::arg(c));
        }
    }
    return y;
}

double idc_time_oracle(const CVector &s, const CVector &h, const CarrierPlan &plan, const RectifierParams &params,
                       double oversampling)
{
    const auto y = received_signal(s, h, plan, oversampling);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : y)
    {
        const double v2 = v * v;
        m2 += v2;
        m4 += v2 * v2;
    }
    m2 /= static_cast<double>(y.size());
    m4 /= static_cast<double>(y.size());
    return params.k2 * m2 + params.k4 * m4;
}

RVector waveform_gradient(const RVector &s_amp, const RVector &h_amp, const RectifierParams &params)
{
    if (s_amp.size() != h_amp.size())
        throw ContractError("waveform_gradient: length mismatch");
    if ((s_amp.array() < 0.0).any() || (h_amp.array() < 0.0).any())
        throw ContractError("waveform_gradient: amplitudes must be non-negative");
    const int n_count = static_cast<int>(s_amp.size());
    const RVector &s = s_amp;
    const RVector &h = h_amp;
    RVector g(n_count);
    for (int n = 0; n < n_count; ++n)
    {
        const double hn2 = h(n) * h(n);
        double t1 = hn2 * hn2 * s(n) * s(n) * s(n);

        double t2 = 0.0;
        for (int n1 = 0; n1 < n_count; ++n1)
            if (n1 != n)
                t2 += h(n1) * h(n1) * s(n1) * s(n1);
        t2 *= 2.0 * hn2 * s(n);

        // n2 + n3 = 2n with n2 != n3 (ordered pairs).
        double t3 = 0.0;
        for (int n2 = 0; n2 < n_count; ++n2)
        {
            const int n3 = 2 * n - n2;
            if (n3 < 0 || n3 >= n_count || n3 == n2)
                continue;
            t3 += h(n2) * h(n3) * s(n2) * s(n3);
        }
        t3 *= hn2 * s(n);

        // n + n1 = n2 + n3 with n1 != n and n2, n3 outside {n, n1}; n2 == n3 is admitted.
        double t4 = 0.0;
        for (int n1 = 0; n1 < n_count; ++n1)
        {
            if (n1 == n)
                continue;
            for (int n2 = 0; n2 < n_count; ++n2)
            {
                const int n3 = n + n1 - n2;
                if (n3 < 0 || n3 >= n_count)
                    continue;
                if (n2 == n || n2 == n1 || n3 == n || n3 == n1)
                    continue;
                t4 += h(n1) * h(n2) * h(n3) * s(n1) * s(n2) * s(n3);
            }
        }
        t4 *= h(n);

        g(n) = params.k2 * hn2 * s(n) + 1.5 * params.k4 * (t1 + t2 + t3 + t4);
    }
    return g;
}

double papr_db(const CVector &s, const CVector &h, const CarrierPlan &plan, double oversampling)
{
    const auto y = received_signal(s, h, plan, oversampling);
    double peak = 0.0;
    double mean = 0.0;
    for (double v : y)
    {
        peak = std::max(peak, v * v);
        mean += v * v;
    }
    mean /= static_cast<double>(y.size());
    if (!(mean > 0.0))
        throw SignalError("papr: zero received signal");
    return 10.0 * std::log10(peak / mean);
}
} // namespace bdris
