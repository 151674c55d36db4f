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
#include "bdris/ris_core.hpp"

#include "bdris/errors.hpp"
#include "bdris/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace bdris
{
CMatrix scattering_from_impedance(const CMatrix &impedance, double z0)
{
    if (impedance.rows() != impedance.cols())
        throw ContractError("scattering_from_impedance: square matrix required");
    const Eigen::Index m = impedance.rows();
    const CMatrix eye = CMatrix::Identity(m, m);
    const CMatrix a = impedance + z0 * eye;
    Eigen::FullPivLU<CMatrix> lu(a);
    if (!lu.isInvertible())
    {
        Eigen::JacobiSVD<CMatrix> svd(a);
        const auto sv = svd.singularValues();
        std::ostringstream msg;
        msg << "scattering_from_impedance: Z + Z0 I is singular (condition number "
            << (sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY) << ")";
        throw NumericalError(msg.str());
    }
    return lu.solve(impedance - z0 * eye);
}

PermutationMatrix::PermutationMatrix(int elements) : m_(elements)
{
    if (elements < 1)
        throw ContractError("PermutationMatrix: at least one element required");
    map_.resize(static_cast<std::size_t>(m_) * m_);
    entries_.resize(half_size());
    for (int col = 0; col < m_; ++col)
        for (int row = 0; row < m_; ++row)
        {
            const int k = slot(row, col);
            map_[col * m_ + row] = k;
            if (row <= col)
                entries_[k] = {row, col};
        }
}

int PermutationMatrix::slot(int row, int col) const
{
    const int r = std::min(row, col);
    const int c = std::max(row, col);
    return c * (c + 1) / 2 + r;
}

bool PermutationMatrix::is_diagonal_slot(int k) const
{
    return entries_[k].first == entries_[k].second;
}

CVector PermutationMatrix::pack(const CMatrix &symmetric) const
{
    CVector out(half_size());
    for (int k = 0; k < half_size(); ++k)
        out(k) = symmetric(entries_[k].first, entries_[k].second);
    return out;
}

CMatrix PermutationMatrix::unpack(const CVector &half) const
{
    if (half.size() != half_size())
        throw ContractError("PermutationMatrix::unpack: wrong length");
    CMatrix out(m_, m_);
    for (int col = 0; col < m_; ++col)
        for (int row = 0; row < m_; ++row)
            out(row, col) = half(map_[col * m_ + row]);
    return out;
}

CVector PermutationMatrix::transpose_apply(const CVector &vec) const
{
    if (vec.size() != static_cast<Eigen::Index>(map_.size()))
        throw ContractError("PermutationMatrix::transpose_apply: wrong length");
    CVector out = CVector::Zero(half_size());
    for (std::size_t i = 0; i < map_.size(); ++i)
        out(map_[i]) += vec(static_cast<Eigen::Index>(i));
    return out;
}

RMatrix PermutationMatrix::dense() const
{
    RMatrix p = RMatrix::Zero(static_cast<Eigen::Index>(map_.size()), half_size());
    for (std::size_t i = 0; i < map_.size(); ++i)
        p(static_cast<Eigen::Index>(i), map_[i]) = 1.0;
    return p;
}

PermutationMatrix permutation_matrix(int elements)
{
    return PermutationMatrix(elements);
}

cd cascade_channel(const CMatrix &theta, const CVector &h_r, const CVector &h_i)
{
    if (theta.rows() != h_r.size() || theta.cols() != h_i.size())
        throw ContractError("cascade_channel: dimension mismatch");
    return h_r.transpose() * theta * h_i;
}

CVector cascade_coefficients(const PermutationMatrix &p, const CVector &h_r, const CVector &h_i)
{
    const CMatrix outer = h_i * h_r.transpose();
    return p.transpose_apply(outer.reshaped());
}

CVector cascade_response(const ChannelRealization &channels, const CMatrix &theta)
{
    const int n_count = channels.subcarriers();
    CVector h(n_count);
    const CMatrix t = channels.reflective * theta; // N x M, row n is h_{R,n}^T Theta
    for (int n = 0; n < n_count; ++n)
        h(n) = (t.row(n).array() * channels.incident.row(n).array()).sum();
    if (channels.direct)
        h += *channels.direct;
    return h;
}

namespace
{
double inf_norm(const CMatrix &a)
{
    return a.cwiseAbs().rowwise().sum().maxCoeff();
}
} // namespace

double neumann_ratio(const CMatrix &impedance, const CMatrix &omega, double z0)
{
    const Eigen::Index m = impedance.rows();
    const CMatrix inv = (impedance + z0 * CMatrix::Identity(m, m)).inverse();
    return omega.cwiseAbs().maxCoeff() * inf_norm(inv);
}

CMatrix neumann_approx_inverse(const CMatrix &impedance, const CMatrix &omega, double z0, double ratio_limit)
{
    if (impedance.rows() != omega.rows() || impedance.cols() != omega.cols())
        throw ContractError("neumann_approx_inverse: dimension mismatch");
    const Eigen::Index m = impedance.rows();
    const CMatrix inv = (impedance + z0 * CMatrix::Identity(m, m)).inverse();
    const double ratio = omega.size() ? omega.cwiseAbs().maxCoeff() * inf_norm(inv) : 0.0;
    if (ratio > ratio_limit)
    {
        std::ostringstream msg;
        msg << "neumann_approx_inverse: perturbation ratio " << ratio << " exceeds " << ratio_limit;
        throw ContractError(msg.str());
    }
    return inv - inv * omega * inv;
}

LinearizedCascade linearize_cascade(const CMatrix &impedance, const CVector &h_r, const CVector &h_i,
                                    const PermutationMatrix &p, double z0)
{
    const Eigen::Index m = impedance.rows();
    const CMatrix eye = CMatrix::Identity(m, m);
    const CMatrix inv = (impedance + z0 * eye).inverse();
    const CVector a = inv.transpose() * h_r;
    const CVector b = (impedance - z0 * eye) * h_i;
    // Both factors of Theta move with Omega: d h = a^T Omega h_I - a^T Omega inv b.
    const CVector c = inv * b - h_i;
    const CMatrix outer = c * a.transpose();
    return {(a.transpose() * b)(0), p.transpose_apply(outer.reshaped())};
}

cd linearized_cascade(const CMatrix &impedance, const CMatrix &omega, const CVector &h_r, const CVector &h_i,
                      double z0, double ratio_limit)
{
    const Eigen::Index m = impedance.rows();
    const CMatrix eye = CMatrix::Identity(m, m);
    const CMatrix approx_inv = neumann_approx_inverse(impedance, omega, z0, ratio_limit);
    const CMatrix inv = (impedance + z0 * eye).inverse();
    const CMatrix b = impedance - z0 * eye;
    // (A^-1 - A^-1 Omega A^-1)(B + Omega) without the second-order term.
    const CMatrix theta1 = approx_inv * b + inv * omega;
    return h_r.transpose() * theta1 * h_i;
}

Takagi takagi_factorization(const CMatrix &symmetric)
{
    if (symmetric.rows() != symmetric.cols())
        throw ContractError("takagi_factorization: square matrix required");
    const Eigen::Index m = symmetric.rows();
    Eigen::JacobiSVD<CMatrix> svd(symmetric, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("takagi_factorization: SVD failed");
    const CMatrix &u = svd.matrixU();
    const CMatrix &v = svd.matrixV();
    const RVector sigma = svd.singularValues();
    const double scale = std::max(1.0, sigma.size() ? sigma(0) : 0.0);

    // conj(V) = U D with D unitary, symmetric and block diagonal over equal singular values.
    CMatrix d = u.adjoint() * v.conjugate();
    const double zero_tol = 1e-12 * scale;
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
        {
            const bool zi = sigma(i) <= zero_tol;
            const bool zj = sigma(j) <= zero_tol;
            if (zi || zj)
                d(i, j) = (i == j) ? cd(1.0) : cd(0.0);
        }
    d = 0.5 * (d + d.transpose()).eval();

    // Principal square root as a primary matrix function of D keeps it symmetric.
    Eigen::ComplexEigenSolver<CMatrix> es(d);
    if (es.info() != Eigen::Success)
        throw NumericalError("takagi_factorization: eigen-decomposition failed");
    const CVector lam = es.eigenvalues().array().sqrt();
    const CMatrix w = es.eigenvectors();
    const CMatrix root = w * lam.asDiagonal() * w.inverse();

    Takagi out{u * root, sigma};
    const CMatrix rebuilt = out.q * sigma.cast<cd>().asDiagonal() * out.q.transpose();
    const double err = (rebuilt - symmetric).norm();
    if (!(err <= 1e-8 * scale))
    {
        std::ostringstream msg;
        msg << "takagi_factorization: reconstruction error " << err;
        throw NumericalError(msg.str());
    }
    return out;
}

double unitarity_residual(const CMatrix &theta)
{
    return (theta.adjoint() * theta - CMatrix::Identity(theta.cols(), theta.cols())).norm();
}

double symmetry_residual(const CMatrix &theta)
{
    return (theta - theta.transpose()).norm();
}

FeasibilityResult feasibility_map(const CMatrix &candidate, const ChannelRealization &channels, const CVector &s,
                                  const RectifierParams &params, int draws, std::uint64_t seed)
{
    if (draws < 1)
        throw ContractError("feasibility_map: at least one draw required");
    if (symmetry_residual(candidate) > 1e-6 * std::max(1.0, candidate.norm()))
        throw ContractError("feasibility_map: candidate must be symmetric");
    const CMatrix sym = 0.5 * (candidate + candidate.transpose());
    const Takagi tk = takagi_factorization(sym);
    const int m = static_cast<int>(sym.rows());
    const int n_count = channels.subcarriers();

    // h_n = sum_i phi_i u_{n,i} v_{n,i} with u = Q^T h_R, v = Q^T h_I.
    const CMatrix uv = (channels.reflective * tk.q).cwiseProduct(channels.incident * tk.q); // N x M
    CVector direct = CVector::Zero(n_count);
    if (channels.direct)
        direct = *channels.direct;

    const auto evaluate = [&](const CVector &phi) {
        const CVector h = uv * phi + direct;
        return idc(s, h, params);
    };

    CVector best_phi = CVector::Ones(m);
    double best = evaluate(best_phi);
    FeasibilityResult out;
    out.idc_zero_phase = best;

    Rng rng(seed);
    CVector phi(m);
    for (int k = 0; k < draws; ++k)
    {
        for (int i = 0; i < m; ++i)
            phi(i) = std::polar(1.0, 2.0 * kPi * rng.uniform());
        const double v = evaluate(phi);
        if (v > best)
        {
            best = v;
            best_phi = phi;
        }
    }
    CMatrix theta = tk.q * best_phi.asDiagonal() * tk.q.transpose();
    theta = 0.5 * (theta + theta.transpose()).eval();
    out.theta = theta;
    out.idc = idc(s, cascade_response(channels, theta), params);
    return out;
}

Topology Topology::fully_connected(int elements)
{
    PermutationMatrix p(elements);
    return Topology(elements, std::vector<bool>(p.half_size(), true));
}

Topology Topology::diagonal(int elements)
{
    PermutationMatrix p(elements);
    std::vector<bool> free(p.half_size());
    for (int k = 0; k < p.half_size(); ++k)
        free[k] = p.is_diagonal_slot(k);
    return Topology(elements, std::move(free));
}

Topology Topology::group_connected(int elements, int group_size)
{
    if (group_size < 1 || elements % group_size != 0)
        throw ContractError("Topology: group size must divide the element count");
    PermutationMatrix p(elements);
    std::vector<bool> free(p.half_size());
    for (int k = 0; k < p.half_size(); ++k)
    {
        const auto [r, c] = p.entry(k);
        free[k] = (r / group_size) == (c / group_size);
    }
    return Topology(elements, std::move(free));
}

int Topology::free_count() const
{
    int n = 0;
    for (bool f : free_)
        n += f ? 1 : 0;
    return n;
}
} // namespace bdris
