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
#include "bdris/rng.hpp"
#include "relaxed.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace bdris
{
CVector SdrData::lags(const CMatrix &x) const
{
    // Tr(D_k X) = sum_n z_{n+k}^H X z_n
    const CMatrix xz = x * z;
    const CMatrix g = z.adjoint() * xz; // g(p, q) = z_p^H X z_q
    const int n_count = subcarriers();
    CVector out = CVector::Zero(n_count);
    for (int k = 0; k < n_count; ++k)
        for (int n = 0; n + k < n_count; ++n)
            out(k) += g(n + k, n);
    return out;
}

CVector SdrData::lags_of(const CVector &theta) const
{
    return autocorrelation(z.adjoint() * theta);
}

double SdrData::objective(const CVector &lags) const
{
    return idc_from_autocorrelation(lags, params);
}

double SdrData::objective_of(const CVector &theta) const
{
    return objective(lags_of(theta));
}

CMatrix SdrData::k1(const CVector &lags) const
{
    const double d0 = lags(0).real();
    CMatrix out = -(0.5 * params.k2 + 0.75 * params.k4 * d0) * d[0];
    for (int k = 1; k < subcarriers(); ++k)
    {
        const CMatrix term = std::conj(lags(k)) * d[k];
        out -= 0.75 * params.k4 * (term + term.adjoint());
    }
    return out;
}

SdrData build_sdr_data(const CMatrix &a, const CVector &s, const RectifierParams &params)
{
    if (a.rows() != s.size() || a.rows() == 0)
        throw ContractError("build_sdr_data: one coefficient row per subcarrier required");
    params.validate();
    SdrData out;
    out.params = params;
    const int n_count = static_cast<int>(a.rows());
    out.z = (s.asDiagonal() * a).transpose().conjugate();
    out.d.reserve(n_count);
    for (int k = 0; k < n_count; ++k)
    {
        const int count = n_count - k;
        out.d.push_back(out.z.leftCols(count) * out.z.middleCols(k, count).adjoint());
    }
    return out;
}

CMatrix bdris_coefficients(const ChannelRealization &channels, bool augmented)
{
    const int m = channels.elements();
    const int n_count = channels.subcarriers();
    const PermutationMatrix p(m);
    const int half = p.half_size();
    CMatrix a(n_count, half + (augmented ? 1 : 0));
    for (int n = 0; n < n_count; ++n)
    {
        a.row(n).head(half) = cascade_coefficients(p, channels.reflective.row(n).transpose(),
                                                   channels.incident.row(n).transpose())
                                  .transpose();
        if (augmented)
            a(n, half) = channels.direct ? (*channels.direct)(n) : cd(0.0);
    }
    return a;
}

CMatrix dris_coefficients(const ChannelRealization &channels, bool augmented)
{
    const int m = channels.elements();
    const int n_count = channels.subcarriers();
    CMatrix a(n_count, m + (augmented ? 1 : 0));
    a.leftCols(m) = channels.reflective.cwiseProduct(channels.incident);
    if (augmented)
        a.col(m) = channels.direct ? *channels.direct : CVector::Zero(n_count);
    return a;
}

namespace
{
struct Term
{
    int i;
    int j;
    cd c;
};

// Constraint alpha is sum_t c_t Pbar_{i_t j_t}; diagonal rows first, then (Re, Im) per pair i < j.
std::vector<std::vector<Term>> unitarity_terms(int m)
{
    std::vector<std::vector<Term>> out;
    out.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        out.push_back({{i, i, 1.0}});
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
        {
            out.push_back({{i, j, 0.5}, {j, i, 0.5}});
            out.push_back({{i, j, cd(0.0, -0.5)}, {j, i, cd(0.0, 0.5)}});
        }
    return out;
}

SdpConstraint<cd> constraint_from_terms(const std::vector<Term> &terms, const PermutationMatrix &p, double rhs)
{
    // Pbar_ij has a one at (slot(a, i), slot(a, j)) for every a.
    std::map<std::pair<int, int>, cd> acc;
    for (const Term &t : terms)
        for (int a = 0; a < p.elements(); ++a)
            acc[{p.slot(a, t.i), p.slot(a, t.j)}] += t.c;
    SdpConstraint<cd> out;
    out.rhs = rhs;
    for (const auto &[key, value] : acc)
        if (key.first <= key.second && value != cd(0.0))
            out.entries.push_back({0, key.first, key.second, value});
    return out;
}

class UnitaritySchur final : public SchurAssembler<cd>
{
  public:
    explicit UnitaritySchur(int m) : m_(m), p_(m), terms_(unitarity_terms(m)) {}

    int covered() const override { return static_cast<int>(terms_.size()); }

    void assemble(const BlockMatrices<cd> &x, const BlockMatrices<cd> &z_inv, RMatrix &schur) const override
    {
        // T(ij, kl) = Tr(Pbar_ij X Pbar_kl W) = sum_ab X[(a,j),(b,k)] W[(b,l),(a,i)] = (U V^T)(jM+k, lM+i)
        const int mm = m_ * m_;
        const CMatrix &xm = x[0];
        const CMatrix &w = z_inv[0];
        CMatrix u(mm, mm);
        CMatrix v(mm, mm);
        for (int j = 0; j < m_; ++j)
            for (int k = 0; k < m_; ++k)
                for (int a = 0; a < m_; ++a)
                    for (int b = 0; b < m_; ++b)
                    {
                        u(j * m_ + k, a * m_ + b) = xm(p_.slot(a, j), p_.slot(b, k));
                        v(j * m_ + k, a * m_ + b) = w(p_.slot(b, j), p_.slot(a, k));
                    }
        const CMatrix t = u * v.transpose();
        const int count = covered();
        schur.resize(count, count);
        for (int alpha = 0; alpha < count; ++alpha)
            for (int beta = alpha; beta < count; ++beta)
            {
                cd sum = 0.0;
                for (const Term &ta : terms_[alpha])
                    for (const Term &tb : terms_[beta])
                        sum += ta.c * tb.c * t(ta.j * m_ + tb.i, tb.j * m_ + ta.i);
                schur(alpha, beta) = sum.real();
                schur(beta, alpha) = sum.real();
            }
    }

  private:
    int m_;
    PermutationMatrix p_;
    std::vector<std::vector<Term>> terms_;
};
} // namespace

std::shared_ptr<const SchurAssembler<cd>> unitarity_schur(int elements)
{
    return std::make_shared<UnitaritySchur>(elements);
}

Relaxation bdris_relaxation(int elements, bool augmented)
{
    const PermutationMatrix p(elements);
    Relaxation out;
    out.elements = elements;
    out.dim = p.half_size() + (augmented ? 1 : 0);
    out.augmented = augmented;
    const auto terms = unitarity_terms(elements);
    for (std::size_t alpha = 0; alpha < terms.size(); ++alpha)
        out.constraints.push_back(constraint_from_terms(terms[alpha], p, alpha < static_cast<std::size_t>(elements) ? 1.0 : 0.0));
    if (augmented)
    {
        SdpConstraint<cd> g;
        g.rhs = 1.0;
        g.entries.push_back({0, out.dim - 1, out.dim - 1, 1.0});
        out.constraints.push_back(g);
    }
    out.schur = unitarity_schur(elements);
    return out;
}

Relaxation dris_relaxation(int elements, bool augmented)
{
    if (elements < 1)
        throw ContractError("dris_relaxation: at least one element required");
    Relaxation out;
    out.elements = elements;
    out.dim = elements + (augmented ? 1 : 0);
    out.diagonal = true;
    out.augmented = augmented;
    for (int i = 0; i < out.dim; ++i)
    {
        SdpConstraint<cd> c;
        c.rhs = 1.0;
        c.entries.push_back({0, i, i, 1.0});
        out.constraints.push_back(c);
    }
    return out;
}

namespace
{
RelaxationStep solve_relaxation(const CMatrix &cost, const Relaxation &relaxation, const SdpOptions &options)
{
    HermitianSdpProblem problem;
    problem.cost.push_back(0.5 * (cost + cost.adjoint()));
    problem.constraints = relaxation.constraints;
    problem.options = options;
    problem.schur = relaxation.schur;
    const auto sol = solve(problem);
    RelaxationStep out;
    out.status = sol.status;
    out.primal_residual = sol.primal_residual;
    out.iterations = sol.iterations;
    if (!sol.x.empty())
        out.x = 0.5 * (sol.x[0] + sol.x[0].adjoint());
    return out;
}

void check_dims(const SdrData &data, const CVector &lags, const Relaxation &relaxation)
{
    if (data.dim() != relaxation.dim)
        throw ContractError("relaxation: data and constraint dimensions differ");
    if (lags.size() != data.subcarriers())
        throw ContractError("relaxation: one lag per subcarrier required");
}
} // namespace

RelaxationStep sdr_step(const SdrData &data, const CVector &lags, const Relaxation &relaxation,
                        const SdpOptions &options)
{
    check_dims(data, lags, relaxation);
    return solve_relaxation(data.k1(lags), relaxation, options);
}

RelaxationStep sdp_rank_step(const SdrData &data, const CVector &lags, const CMatrix &x_bar, double eta,
                             const Relaxation &relaxation, const SdpOptions &options)
{
    check_dims(data, lags, relaxation);
    const double norm = x_bar.norm();
    if (!(norm > 0.0) || !(eta >= 0.0))
        throw ContractError("sdp_rank_step: nonzero reference and nonnegative weight required");
    const int dim = relaxation.dim;
    const CMatrix cost = data.k1(lags) + eta * (CMatrix::Identity(dim, dim) - x_bar / norm);
    return solve_relaxation(cost, relaxation, options);
}

double dominance_ratio(const CMatrix &x)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (x + x.adjoint()), Eigen::EigenvaluesOnly);
    const RVector lambda = es.eigenvalues().cwiseMax(0.0);
    const double total = lambda.sum();
    return total > 0.0 ? lambda.maxCoeff() / total : 0.0;
}

CMatrix theta_from_lifted(const CVector &theta, int elements)
{
    const PermutationMatrix p(elements);
    if (theta.size() < p.half_size())
        throw ContractError("theta_from_lifted: vector too short");
    return p.unpack(theta.head(p.half_size()));
}

CVector lifted_from_theta(const CMatrix &theta, bool augmented)
{
    const PermutationMatrix p(static_cast<int>(theta.rows()));
    CVector out(p.half_size() + (augmented ? 1 : 0));
    out.head(p.half_size()) = p.pack(theta);
    if (augmented)
        out(p.half_size()) = 1.0;
    return out;
}

namespace
{
// Weight of each slot in ||Theta||_F^2.
RVector frobenius_weights(int elements)
{
    const PermutationMatrix p(elements);
    RVector w(p.half_size());
    for (int k = 0; k < p.half_size(); ++k)
        w(k) = p.is_diagonal_slot(k) ? 1.0 : 2.0;
    return w;
}

bool unit_direct(CVector &theta, const Relaxation &relaxation)
{
    if (!relaxation.augmented)
        return true;
    const cd g = theta(theta.size() - 1);
    if (!(std::abs(g) > 1e-9 * theta.norm()))
        return false;
    theta /= g;
    theta(theta.size() - 1) = 1.0;
    return true;
}

bool unit_modulus(CVector &theta, int elements)
{
    for (int i = 0; i < elements; ++i)
    {
        const double mag = std::abs(theta(i));
        theta(i) = mag > 0.0 ? theta(i) / mag : cd(1.0);
    }
    return true;
}

bool normalize_inplace(CVector &theta, const Relaxation &relaxation, const RVector &weights)
{
    if (!unit_direct(theta, relaxation))
        return false;
    if (relaxation.diagonal)
        return unit_modulus(theta, relaxation.elements);
    const Eigen::Index half = weights.size();
    const double w = (weights.array() * theta.head(half).array().abs2()).sum();
    if (!(w > 0.0))
        return false;
    theta.head(half) *= std::sqrt(relaxation.elements / w);
    return true;
}
} // namespace

CVector normalize_candidate(const CVector &theta, const Relaxation &relaxation)
{
    if (theta.size() != relaxation.dim)
        throw ContractError("normalize_candidate: dimension mismatch");
    CVector out = theta;
    const RVector weights = relaxation.diagonal ? RVector() : frobenius_weights(relaxation.elements);
    if (!normalize_inplace(out, relaxation, weights))
        throw SignalError("normalize_candidate: degenerate vector (auxiliary variable or surface part vanishes)");
    return out;
}

namespace detail
{
bool project_candidate(CVector &theta, const Relaxation &relaxation)
{
    if (!unit_direct(theta, relaxation))
        return false;
    if (relaxation.diagonal)
        return unit_modulus(theta, relaxation.elements);
    const PermutationMatrix p(relaxation.elements);
    const CMatrix t = p.unpack(theta.head(p.half_size()));
    if (!(t.norm() > 0.0))
        return false;
    try
    {
        // Nearest unitary to Q S Q^T is Q Q^T, which is symmetric.
        const Takagi tk = takagi_factorization(t);
        CMatrix u = tk.q * tk.q.transpose();
        u = 0.5 * (u + u.transpose()).eval();
        theta.head(p.half_size()) = p.pack(u);
    }
    catch (const NumericalError &)
    {
        return false;
    }
    return true;
}
} // namespace detail

namespace
{
constexpr int kBatch = 256;
constexpr int kRefined = 32;

RVector batch_objective(const SdrData &data, const CMatrix &candidates)
{
    const CMatrix y = data.z.adjoint() * candidates;
    RVector out(candidates.cols());
    for (Eigen::Index c = 0; c < candidates.cols(); ++c)
        out(c) = idc_from_autocorrelation(autocorrelation(y.col(c)), data.params);
    return out;
}
} // namespace

Randomized gaussian_randomization(const CMatrix &x, const SdrData &data, const Relaxation &relaxation, int draws,
                                  std::uint64_t seed)
{
    if (x.rows() != relaxation.dim || data.dim() != relaxation.dim)
        throw ContractError("gaussian_randomization: dimension mismatch");
    if (draws < 0)
        throw ContractError("gaussian_randomization: negative draw count");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (x + x.adjoint()));
    if (es.info() != Eigen::Success)
        throw NumericalError("gaussian_randomization: eigendecomposition failed");
    const RVector lambda = es.eigenvalues().cwiseMax(0.0);
    const double total = lambda.sum();
    if (!(total > 0.0))
        throw NumericalError("gaussian_randomization: covariance has no positive eigenvalue");
    const int dim = relaxation.dim;
    const double top = lambda(dim - 1);

    Randomized best;
    CVector principal = std::sqrt(top) * es.eigenvectors().col(dim - 1);
    if (top / total >= 1.0 - 1e-6)
    {
        if (!detail::project_candidate(principal, relaxation))
            throw SignalError("gaussian_randomization: degenerate principal component");
        best.theta = principal;
        best.objective = data.objective_of(principal);
        best.principal = true;
        return best;
    }

    // Coarse ranking on cheaply normalized draws, then exact projection of the leaders.
    const RVector weights = relaxation.diagonal ? RVector() : frobenius_weights(relaxation.elements);
    std::vector<std::pair<double, CVector>> leaders;
    const auto offer = [&](double value, const CVector &theta) {
        if (static_cast<int>(leaders.size()) < kRefined)
        {
            leaders.emplace_back(value, theta);
            return;
        }
        auto worst = std::min_element(leaders.begin(), leaders.end(),
                                      [](const auto &l, const auto &r) { return l.first < r.first; });
        if (value > worst->first)
            *worst = {value, theta};
    };

    {
        CVector c = principal;
        if (normalize_inplace(c, relaxation, weights))
            offer(data.objective_of(c), c);
    }

    int rank = 0;
    for (int i = 0; i < dim; ++i)
        if (lambda(i) > 1e-12 * top)
            ++rank;
    const CMatrix factor = es.eigenvectors().rightCols(rank) * lambda.tail(rank).cwiseSqrt().asDiagonal();
    Rng rng(seed);
    for (int start = 0; start < draws; start += kBatch)
    {
        const int count = std::min(kBatch, draws - start);
        CMatrix g(rank, count);
        for (int c = 0; c < count; ++c)
            for (int r = 0; r < rank; ++r)
                g(r, c) = rng.complex_normal();
        CMatrix w = factor * g;
        std::vector<bool> valid(count);
        for (int c = 0; c < count; ++c)
        {
            CVector col = w.col(c);
            valid[c] = normalize_inplace(col, relaxation, weights);
            w.col(c) = valid[c] ? col : CVector::Zero(dim);
        }
        const RVector values = batch_objective(data, w);
        for (int c = 0; c < count; ++c)
            if (valid[c])
                offer(values(c), w.col(c));
    }

    // Deterministic order for the refinement: by coarse value, ties by vector content order of arrival.
    std::stable_sort(leaders.begin(), leaders.end(), [](const auto &l, const auto &r) { return l.first > r.first; });
    bool found = false;
    for (auto &[coarse, theta] : leaders)
    {
        CVector t = theta;
        if (!detail::project_candidate(t, relaxation))
            continue;
        const double v = data.objective_of(t);
        if (!found || v > best.objective)
        {
            best.theta = t;
            best.objective = v;
            found = true;
        }
    }
    if (!found)
        throw SignalError("gaussian_randomization: no usable draw");
    return best;
}

namespace detail
{
RelaxedOutcome relaxed_beamforming(const CMatrix &a, const CVector &s, const RectifierParams &params,
                                   const Relaxation &relaxation, const CVector &start, bool rank_penalty,
                                   const BeamformerConfig &cfg, std::uint64_t seed)
{
    const SdrData data = build_sdr_data(a, s, params);
    RelaxedOutcome out;
    CMatrix x = start * start.adjoint();
    CVector lags = data.lags(x);
    double previous = data.objective(lags);
    CMatrix x_bar = x;
    double eta = 0.0;
    if (rank_penalty)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(data.k1(lags), Eigen::EigenvaluesOnly);
        eta = cfg.rank_penalty * es.eigenvalues().cwiseAbs().maxCoeff();
    }

    const int limit = rank_penalty ? 3 * cfg.max_inner : cfg.max_inner;
    for (int t = 0; t < limit; ++t)
    {
        const RelaxationStep step = rank_penalty ? sdp_rank_step(data, lags, x_bar, eta, relaxation, cfg.sdp)
                                                 : sdr_step(data, lags, relaxation, cfg.sdp);
        ++out.solves;
        if (step.status != SdpStatus::optimal && step.status != SdpStatus::near_optimal)
        {
            out.flags.push_back("relaxation solve " + to_string(step.status));
            if (step.x.size() == 0 || step.status == SdpStatus::infeasible || step.status == SdpStatus::unbounded)
                break;
            if (step.primal_residual > 1e-4)
                break;
        }
        x = step.x;
        lags = data.lags(x);
        const double value = data.objective(lags);
        const bool settled = std::abs(1.0 - previous / value) <= cfg.tolerance;
        previous = value;
        if (rank_penalty)
        {
            x_bar = x;
            eta *= 2.0;
            if (settled && dominance_ratio(x) >= cfg.dominance_target)
                break;
        }
        else if (settled)
            break;
    }
    out.dominance = dominance_ratio(x);
    const Randomized r = gaussian_randomization(x, data, relaxation, cfg.randomization_draws, seed);
    out.theta = r.theta;
    out.objective = r.objective;
    return out;
}
} // namespace detail
} // namespace bdris
