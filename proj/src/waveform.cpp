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
#include "bdris/waveform.hpp"

#include "bdris/errors.hpp"

#include <cmath>

namespace bdris
{
void WaveformOptConfig::validate() const
{
    if (!(rho > 0.0 && rho <= 1.0))
        throw ContractError("WaveformOptConfig: rho must lie in (0, 1]");
    if (!(tolerance > 0.0))
        throw ContractError("WaveformOptConfig: tolerance must be positive");
    if (max_iters < 1)
        throw ContractError("WaveformOptConfig: max_iters must be positive");
    if (!std::isfinite(beta))
        throw ContractError("WaveformOptConfig: beta must be finite");
}

double waveform_power(const CVector &s)
{
    return 0.5 * s.squaredNorm();
}

namespace
{
CVector with_matched_phase(const RVector &amp, const CVector &h)
{
    CVector s(amp.size());
    for (Eigen::Index n = 0; n < amp.size(); ++n)
        s(n) = std::polar(amp(n), -std::arg(h(n)));
    return s;
}
} // namespace

CVector smf_init(const CVector &h, double transmit_power, double beta)
{
    if (!(transmit_power > 0.0))
        throw ContractError("smf_init: transmit power must be positive");
    const RVector mag = h.cwiseAbs();
    RVector amp(h.size());
    for (Eigen::Index n = 0; n < h.size(); ++n)
        amp(n) = mag(n) > 0.0 ? std::pow(mag(n), beta) : 0.0;
    const double total = amp.squaredNorm();
    if (!(total > 0.0))
        throw SignalError("smf_init: all-zero channel");
    amp *= std::sqrt(2.0 * transmit_power / total);
    return with_matched_phase(amp, h);
}

double dual_lambda(const RVector &g, double transmit_power)
{
    if (!(transmit_power > 0.0))
        throw ContractError("dual_lambda: transmit power must be positive");
    const double total = g.squaredNorm();
    if (!(total > 0.0))
        throw SignalError("dual_lambda: zero gradient");
    return std::sqrt(total / (2.0 * transmit_power));
}

namespace
{
double kkt_residual(const RVector &amp, const RVector &h_amp, double transmit_power,
                    const RectifierParams &params)
{
    const RVector s = amp * std::sqrt(transmit_power / (0.5 * amp.squaredNorm()));
    const RVector g = waveform_gradient(s, h_amp, params);
    const double gn = g.norm();
    if (!(gn > 0.0))
        return 0.0;
    return (g - dual_lambda(g, transmit_power) * s).norm() / gn;
}
} // namespace

WaveformResult it_wf(const CVector &h, double transmit_power, const WaveformOptConfig &cfg,
                     const RectifierParams &params, const std::optional<RVector> &start)
{
    cfg.validate();
    const RVector h_amp = h.cwiseAbs();
    RVector amp;
    if (start)
    {
        if (start->size() != h.size() || (start->array() < 0.0).any())
            throw ContractError("it_wf: invalid starting amplitudes");
        amp = *start;
        const double p = 0.5 * amp.squaredNorm();
        if (!(p > 0.0))
            amp = smf_init(h, transmit_power, cfg.beta).cwiseAbs();
        else
            amp *= std::sqrt(transmit_power / p);
    }
    else
    {
        amp = smf_init(h, transmit_power, cfg.beta).cwiseAbs();
    }

    WaveformResult out;
    double current = idc(with_matched_phase(amp, h), h, params);
    out.idc_trace.push_back(current);
    RVector best = amp;
    double best_idc = current;

    double xi_prev = 0.0;
    for (int it = 1; it <= cfg.max_iters; ++it)
    {
        const RVector g = waveform_gradient(amp, h_amp, params);
        if (!(g.squaredNorm() > 0.0))
        {
            out.converged = true;
            break;
        }
        const RVector target = g / dual_lambda(g, transmit_power);
        amp += cfg.rho * (target - amp);
        out.iterations = it;

        current = idc(with_matched_phase(amp, h), h, params);
        out.idc_trace.push_back(current);
        if (current > best_idc)
        {
            best_idc = current;
            best = amp;
        }

        // The averaged step lands inside the budget sphere, so the ratio test alone can
        // stop well short of stationarity; also require a small KKT residual.
        const double xi = -g.dot(amp);
        if (it > 1 && std::abs(1.0 - xi_prev / xi) <= cfg.tolerance &&
            kkt_residual(amp, h_amp, transmit_power, params) <= 10.0 * cfg.tolerance)
        {
            out.converged = true;
            break;
        }
        xi_prev = xi;
    }
    // Scaling up never lowers the output, so spend the whole budget.
    best *= std::sqrt(transmit_power / (0.5 * best.squaredNorm()));
    out.weights = with_matched_phase(best, h);
    return out;
}
} // namespace bdris
