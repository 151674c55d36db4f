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
namespace
{
// Upper-triangle entries of a dense Hermitian matrix, scaled.
void append_dense(SdpConstraint<cd> &c, int block, const CMatrix &a, double scale)
{
    for (Eigen::Index col = 0; col < a.cols(); ++col)
        for (Eigen::Index row = 0; row <= col; ++row)
            if (a(row, col) != cd(0.0))
                c.entries.push_back({block, static_cast<int>(row), static_cast<int>(col), scale * a(row, col)});
}
} // namespace

ScaStep sca_bdris_step(const CMatrix &theta_prev, const ChannelRealization &channels, const CVector &s,
                       const RectifierParams &params, double sigma, double trust_radius, const SdpOptions &options)
{
    const int m = channels.elements();
    const int n_count = channels.subcarriers();
    if (theta_prev.rows() != m || theta_prev.cols() != m || s.size() != n_count)
        throw ContractError("sca_bdris_step: dimension mismatch");
    if (!(sigma > 0.0) || !(trust_radius > 0.0))
        throw ContractError("sca_bdris_step: penalty and trust radius must be positive");
    if (symmetry_residual(theta_prev) > 1e-8 * std::max(1.0, theta_prev.norm()))
        throw ContractError("sca_bdris_step: previous point must be symmetric");

    const PermutationMatrix p(m);
    const int half = p.half_size();
    const CMatrix &tl = theta_prev;

    // d i = 2 Re sum_ab E_ab dTheta_ab, measured relative to i at the expansion point so that the
    // penalty and trust radius do not depend on the current unit scale.
    const CVector y = s.cwiseProduct(cascade_response(channels, tl));
    const CVector w = idc_product_gradient(y, params);
    CMatrix e = CMatrix::Zero(m, m);
    for (int n = 0; n < n_count; ++n)
        e += (s(n) * std::conj(w(n))) * channels.reflective.row(n).transpose() * channels.incident.row(n);
    const double base = idc_from_products(y, params);
    if (base > 0.0)
        e /= base;

    // Dual variables: (Re theta_k, Im theta_k) per slot, then S_aa, then (Re S_ab, Im S_ab) for a < b.
    // Blocks: 0 [[I, Theta^H], [Theta, I]], 1 linearized Theta^H Theta - I + S, 2 S, 3 trust region.
    HermitianSdpProblem problem;
    problem.options = options;
    problem.cost.resize(4);
    problem.cost[0] = CMatrix::Identity(2 * m, 2 * m);
    problem.cost[1] = -tl.adjoint() * tl - CMatrix::Identity(m, m);
    problem.cost[2] = CMatrix::Zero(m, m);
    CMatrix trust = trust_radius * CMatrix::Identity(half + 1, half + 1);
    for (int k = 0; k < half; ++k)
    {
        const auto [a, b] = p.entry(k);
        const double ck = a == b ? 1.0 : std::sqrt(2.0);
        trust(1 + k, 0) = -ck * tl(a, b);
        trust(0, 1 + k) = std::conj(trust(1 + k, 0));
    }
    problem.cost[3] = trust;

    for (int k = 0; k < half; ++k)
    {
        const auto [a, b] = p.entry(k);
        const double ck = a == b ? 1.0 : std::sqrt(2.0);
        CMatrix sym = CMatrix::Zero(m, m);
        sym(a, b) = 1.0;
        sym(b, a) = 1.0;
        const cd ek = a == b ? e(a, a) : e(a, b) + e(b, a);
        for (const cd dir : {cd(1.0, 0.0), cd(0.0, 1.0)})
        {
            // F_i for Theta = Theta_prev + dir * sym; the constraint matrix is -F_i.
            SdpConstraint<cd> c;
            c.rhs = 2.0 * (ek * dir).real();
            CMatrix f0 = CMatrix::Zero(2 * m, 2 * m);
            f0.bottomLeftCorner(m, m) = dir * sym;
            f0.topRightCorner(m, m) = std::conj(dir) * sym;
            append_dense(c, 0, f0, -1.0);
            const CMatrix step = dir * sym;
            append_dense(c, 1, tl.adjoint() * step + step.adjoint() * tl, -1.0);
            c.entries.push_back({3, 0, 1 + k, -ck * std::conj(dir)});
            problem.constraints.push_back(std::move(c));
        }
    }
    for (int a = 0; a < m; ++a)
    {
        SdpConstraint<cd> c;
        c.rhs = -sigma;
        c.entries.push_back({1, a, a, -1.0});
        c.entries.push_back({2, a, a, -1.0});
        problem.constraints.push_back(std::move(c));
    }
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (const cd dir : {cd(1.0, 0.0), cd(0.0, 1.0)})
            {
                SdpConstraint<cd> c;
                c.rhs = 0.0;
                c.entries.push_back({1, a, b, -dir});
                c.entries.push_back({2, a, b, -dir});
                problem.constraints.push_back(std::move(c));
            }

    const auto sol = solve(problem);
    ScaStep out;
    out.status = sol.status;
    out.ok = sol.usable();
    if (!out.ok)
    {
        out.theta = theta_prev;
        return out;
    }
    CVector theta(half);
    for (int k = 0; k < half; ++k)
        theta(k) = cd(sol.y(2 * k), sol.y(2 * k + 1));
    out.theta = p.unpack(theta);
    return out;
}
} // namespace bdris
