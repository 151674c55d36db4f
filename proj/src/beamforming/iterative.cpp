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
#include "bdris/beamforming.hpp"
#include "bdris/errors.hpp"

#include <cmath>

namespace bdris
{
CVector it_bdris_direction(const CMatrix &impedance, const ChannelRealization &channels, const CVector &s,
                           const RectifierParams &params, const PermutationMatrix &p)
{
    const int n_count = channels.subcarriers();
    if (s.size() != n_count || impedance.rows() != channels.elements())
        throw ContractError("it_bdris_direction: dimension mismatch");
    // h_n ~ c_n - f_n^T omega, so d i / d conj(omega) = -sum_n conj(s_n) w_n conj(f_n).
    CVector y(n_count);
    std::vector<CVector> f(n_count);
    for (int n = 0; n < n_count; ++n)
    {
        const LinearizedCascade lin = linearize_cascade(impedance, channels.reflective.row(n).transpose(),
                                                        channels.incident.row(n).transpose(), p);
        cd h = lin.constant;
        if (channels.direct)
            h += (*channels.direct)(n);
        y(n) = s(n) * h;
        f[n] = lin.gradient;
    }
    const CVector w = idc_product_gradient(y, params);
    CVector u = CVector::Zero(p.half_size());
    for (int n = 0; n < n_count; ++n)
        u -= (std::conj(s(n)) * w(n)) * f[n].conjugate();
    return u;
}

CVector it_bdris_step(const CVector &u, double tau, const Topology &topology)
{
    if (static_cast<std::size_t>(u.size()) != topology.mask().size())
        throw ContractError("it_bdris_step: topology size mismatch");
    CVector out = CVector::Zero(u.size());
    for (Eigen::Index r = 0; r < u.size(); ++r)
    {
        const double mag = std::abs(u(r));
        if (topology.is_free(static_cast<int>(r)) && mag > 0.0)
            out(r) = tau * u(r) / mag;
    }
    return out;
}

double it_bdris_radius(const CMatrix &impedance, double gamma, double z0)
{
    const Eigen::Index m = impedance.rows();
    const CMatrix inv = (impedance + z0 * CMatrix::Identity(m, m)).inverse();
    return gamma / inv.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace
{
void check_impedance(const CMatrix &z, const Topology &topology)
{
    if (z.rows() != z.cols() || z.rows() != topology.elements())
        throw ContractError("it_bdris_inner: impedance and topology sizes differ");
    const double scale = std::max(1.0, z.norm());
    if (z.real().norm() > 1e-9 * scale || symmetry_residual(z) > 1e-9 * scale)
        throw ContractError("it_bdris_inner: impedance must be purely imaginary and symmetric");
    const PermutationMatrix p(topology.elements());
    for (int k = 0; k < p.half_size(); ++k)
    {
        const auto [a, b] = p.entry(k);
        if (!topology.is_free(k) && z(a, b) != cd(0.0))
            throw ContractError("it_bdris_inner: impedance violates the topology");
    }
}

double exact_idc(const CMatrix &z, const ChannelRealization &channels, const CVector &s, const RectifierParams &params)
{
    return idc(s, cascade_response(channels, scattering_from_impedance(z)), params);
}
} // namespace

ItResult it_bdris_inner(const CMatrix &impedance, const ChannelRealization &channels, const CVector &s,
                        const RectifierParams &params, const Topology &topology, double gamma, double step_control,
                        double tolerance, int max_iters)
{
    check_impedance(impedance, topology);
    if (!(gamma > 0.0) || !(step_control > 0.0 && step_control <= 1.0) || max_iters < 0)
        throw ContractError("it_bdris_inner: invalid step parameters");
    const PermutationMatrix p(topology.elements());
    constexpr int kHalvings = 5;

    ItResult out;
    out.impedance = impedance;
    double current = exact_idc(impedance, channels, s, params);
    out.idc_trace.push_back(current);
    CVector omega = CVector::Zero(p.half_size());

    for (int it = 0; it < max_iters; ++it)
    {
        const CVector u = it_bdris_direction(out.impedance, channels, s, params, p);
        if (!(u.norm() > 0.0))
            break;
        const double tau = it_bdris_radius(out.impedance, gamma);
        CVector target = it_bdris_step(u, tau, topology);
        CVector trial = omega + step_control * (target - omega);

        bool accepted = false;
        for (int attempt = 0; attempt <= kHalvings && !accepted; ++attempt)
        {
            for (Eigen::Index r = 0; r < trial.size(); ++r)
                if (std::abs(trial(r)) > tau)
                    trial(r) *= tau / std::abs(trial(r));
            // Only the reactive part keeps the surface lossless.
            const CMatrix delta = kJ * p.unpack(trial).imag().cast<cd>();
            const CMatrix z = out.impedance + delta;
            const double value = exact_idc(z, channels, s, params);
            if (value >= current)
            {
                accepted = true;
                omega = trial;
                out.impedance = z;
                const double previous = current;
                current = value;
                out.idc_trace.push_back(current);
                ++out.iterations;
                if (std::abs(1.0 - previous / current) <= tolerance)
                    return out;
            }
            else
            {
                omega.setZero();
                target *= 0.5;
                trial = step_control * target;
            }
        }
        if (!accepted)
            break;
    }
    return out;
}
} // namespace bdris
