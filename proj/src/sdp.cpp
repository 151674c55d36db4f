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
#include "bdris/sdp.hpp"

#include "bdris/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace bdris
{
std::string to_string(SdpStatus status)
{
    switch (status)
    {
    case SdpStatus::optimal:
        return "optimal";
    case SdpStatus::near_optimal:
        return "near-optimal";
    case SdpStatus::infeasible:
        return "infeasible";
    case SdpStatus::unbounded:
        return "unbounded";
    case SdpStatus::iteration_limit:
        return "iteration-limit";
    }
    return "unknown";
}

namespace
{
using std::conj;
inline double conj(double v) { return v; }
inline double re(double v) { return v; }
inline double re(const cd &v) { return v.real(); }
inline double im(double) { return 0.0; }
inline double im(const cd &v) { return v.imag(); }
inline double abs2(double v) { return v * v; }
inline double abs2(const cd &v) { return std::norm(v); }

template <class S> struct Term
{
    int row;
    int col;
    S value;
};

template <class S> struct BlockUse
{
    int constraint;
    std::vector<Term<S>> terms; // both triangles
};

template <class S> DenseMatrix<S> hermitian_part(const DenseMatrix<S> &a)
{
    return 0.5 * (a + a.adjoint());
}

template <class S> double inner(const DenseMatrix<S> &a, const DenseMatrix<S> &b)
{
    // Re Tr(A B) for Hermitian A, B.
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            s += re(a(i, j) * conj(b(i, j)));
    return s;
}

template <class S> double inner(const BlockMatrices<S> &a, const BlockMatrices<S> &b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += inner(a[k], b[k]);
    return s;
}

template <class S> double frob(const BlockMatrices<S> &a)
{
    double s = 0.0;
    for (const auto &m : a)
        s += m.squaredNorm();
    return std::sqrt(s);
}

// Largest alpha with X + alpha dX PSD (infinity when unbounded).
template <class S> double max_step(const DenseMatrix<S> &x, const DenseMatrix<S> &dx)
{
    Eigen::LLT<DenseMatrix<S>> llt(x);
    if (llt.info() != Eigen::Success)
        return 0.0;
    DenseMatrix<S> w = llt.matrixL().solve(dx);
    w = llt.matrixL().solve(w.adjoint().eval());
    w = hermitian_part<S>(w);
    Eigen::SelfAdjointEigenSolver<DenseMatrix<S>> es(w, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

template <class S> class Solver
{
  public:
    explicit Solver(const BasicSdpProblem<S> &p) : prob_(p) {}
    BasicSdpSolution<S> run();

  private:
    void prepare();
    RVector apply_a(const BlockMatrices<S> &x) const;
    RVector apply_a_general(const std::vector<DenseMatrix<S>> &x) const { return apply_a(x); }
    BlockMatrices<S> apply_at(const RVector &y) const;
    void assemble_schur(const BlockMatrices<S> &x, const BlockMatrices<S> &z_inv, RMatrix &schur) const;

    const BasicSdpProblem<S> &prob_;
    int nb_ = 0;
    int m_ = 0;
    std::vector<int> size_;
    std::vector<std::vector<BlockUse<S>>> uses_; // per block, scaled values
    std::vector<double> row_scale_;
    RVector b_;      // scaled
    double b_scale_ = 1.0;
    double c_scale_ = 1.0;
    BlockMatrices<S> c_; // scaled
};

template <class S> void Solver<S>::prepare()
{
    nb_ = prob_.block_count();
    m_ = static_cast<int>(prob_.constraints.size());
    size_.resize(nb_);
    for (int k = 0; k < nb_; ++k)
        size_[k] = static_cast<int>(prob_.cost[k].rows());

    uses_.assign(nb_, {});
    row_scale_.assign(m_, 1.0);
    b_.resize(m_);
    for (int i = 0; i < m_; ++i)
    {
        const auto &con = prob_.constraints[i];
        std::map<int, std::vector<Term<S>>> per_block;
        double norm2 = 0.0;
        for (const auto &e : con.entries)
        {
            auto &t = per_block[e.block];
            if (e.row == e.col)
            {
                t.push_back({e.row, e.col, e.value});
                norm2 += abs2(e.value);
            }
            else
            {
                t.push_back({e.row, e.col, e.value});
                t.push_back({e.col, e.row, conj(e.value)});
                norm2 += 2.0 * abs2(e.value);
            }
        }
        if (!(norm2 > 0.0))
            throw ContractError("sdp: constraint " + std::to_string(i) + " has no entries");
        row_scale_[i] = std::sqrt(norm2);
        for (auto &[blk, terms] : per_block)
        {
            for (auto &t : terms)
                t.value /= row_scale_[i];
            uses_[blk].push_back({i, std::move(terms)});
        }
        b_(i) = con.rhs / row_scale_[i];
    }
    const double bmax = m_ ? b_.cwiseAbs().maxCoeff() : 0.0;
    b_scale_ = bmax > 0.0 ? bmax : 1.0;
    b_ /= b_scale_;

    double cn = 0.0;
    for (const auto &c : prob_.cost)
        cn += c.squaredNorm();
    c_scale_ = cn > 0.0 ? std::sqrt(cn) : 1.0;
    c_.resize(nb_);
    for (int k = 0; k < nb_; ++k)
        c_[k] = hermitian_part<S>(prob_.cost[k]) / c_scale_;
}

template <class S> RVector Solver<S>::apply_a(const BlockMatrices<S> &x) const
{
    RVector out = RVector::Zero(m_);
    for (int k = 0; k < nb_; ++k)
        for (const auto &u : uses_[k])
        {
            double s = 0.0;
            for (const auto &t : u.terms)
                s += re(t.value * x[k](t.col, t.row));
            out(u.constraint) += s;
        }
    return out;
}

template <class S> BlockMatrices<S> Solver<S>::apply_at(const RVector &y) const
{
    BlockMatrices<S> out(nb_);
    for (int k = 0; k < nb_; ++k)
    {
        out[k] = DenseMatrix<S>::Zero(size_[k], size_[k]);
        for (const auto &u : uses_[k])
        {
            const double yi = y(u.constraint);
            for (const auto &t : u.terms)
                out[k](t.row, t.col) += yi * t.value;
        }
    }
    return out;
}

template <class S>
void Solver<S>::assemble_schur(const BlockMatrices<S> &x, const BlockMatrices<S> &z_inv, RMatrix &schur) const
{
    schur.setZero(m_, m_);
    int covered = 0;
    if (prob_.schur)
    {
        covered = prob_.schur->covered();
        RMatrix fast = RMatrix::Zero(m_, m_);
        prob_.schur->assemble(x, z_inv, fast);
        for (int i = 0; i < covered; ++i)
            for (int j = 0; j < covered; ++j)
                schur(i, j) = fast(i, j) / (row_scale_[i] * row_scale_[j]);
    }

    for (int k = 0; k < nb_; ++k)
    {
        const auto &uses = uses_[k];
        if (uses.empty())
            continue;
        const int n = size_[k];
        double total_terms = 0.0;
        double dense_cost = 0.0;
        for (const auto &u : uses)
        {
            total_terms += static_cast<double>(u.terms.size());
            // rows touched bounded by term count
            dense_cost += static_cast<double>(n) * n * std::min<double>(n, u.terms.size());
        }
        const double sparse_cost = 0.5 * total_terms * total_terms;
        const auto &xk = x[k];
        const auto &zk = z_inv[k];

        if (sparse_cost <= dense_cost)
        {
            for (std::size_t a = 0; a < uses.size(); ++a)
            {
                const auto &ua = uses[a];
                for (std::size_t b = a; b < uses.size(); ++b)
                {
                    const auto &ub = uses[b];
                    if (ua.constraint < covered && ub.constraint < covered)
                        continue;
                    S acc{};
                    for (const auto &e : ua.terms)
                    {
                        S inner_acc{};
                        for (const auto &f : ub.terms)
                            inner_acc += f.value * xk(e.col, f.row) * zk(f.col, e.row);
                        acc += e.value * inner_acc;
                    }
                    const double v = re(acc);
                    schur(ua.constraint, ub.constraint) += v;
                    if (ua.constraint != ub.constraint)
                        schur(ub.constraint, ua.constraint) += v;
                }
            }
        }
        else
        {
            for (std::size_t a = 0; a < uses.size(); ++a)
            {
                const auto &ua = uses[a];
                // G = Z^-1 A_a X restricted to the rows of A_a.
                std::vector<int> rows;
                for (const auto &t : ua.terms)
                    rows.push_back(t.row);
                std::sort(rows.begin(), rows.end());
                rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
                std::vector<int> pos(n, -1);
                for (std::size_t r = 0; r < rows.size(); ++r)
                    pos[rows[r]] = static_cast<int>(r);
                DenseMatrix<S> ax = DenseMatrix<S>::Zero(static_cast<Eigen::Index>(rows.size()), n);
                DenseMatrix<S> zc(n, static_cast<Eigen::Index>(rows.size()));
                for (const auto &t : ua.terms)
                    ax.row(pos[t.row]) += t.value * xk.row(t.col);
                for (std::size_t r = 0; r < rows.size(); ++r)
                    zc.col(static_cast<Eigen::Index>(r)) = zk.col(rows[r]);
                const DenseMatrix<S> g = zc * ax;
                for (std::size_t b = a; b < uses.size(); ++b)
                {
                    const auto &ub = uses[b];
                    if (ua.constraint < covered && ub.constraint < covered)
                        continue;
                    S acc{};
                    for (const auto &f : ub.terms)
                        acc += f.value * g(f.col, f.row);
                    const double v = re(acc);
                    schur(ua.constraint, ub.constraint) += v;
                    if (ua.constraint != ub.constraint)
                        schur(ub.constraint, ua.constraint) += v;
                }
            }
        }
    }
}

template <class S> BasicSdpSolution<S> Solver<S>::run()
{
    prepare();
    const SdpOptions &opt = prob_.options;
    const double tol = opt.tolerance;

    int total_n = 0;
    for (int n : size_)
        total_n += n;

    // Starting point scaled to the normalized data.
    BlockMatrices<S> x(nb_), z(nb_);
    RVector y = RVector::Zero(m_);
    for (int k = 0; k < nb_; ++k)
    {
        const int n = size_[k];
        double anorm_max = 0.0;
        double bratio = 0.0;
        for (const auto &u : uses_[k])
        {
            double a2 = 0.0;
            for (const auto &t : u.terms)
                a2 += abs2(t.value);
            const double an = std::sqrt(a2);
            anorm_max = std::max(anorm_max, an);
            bratio = std::max(bratio, (1.0 + std::abs(b_(u.constraint))) / (1.0 + an));
        }
        const double xi = std::max({1.0, std::sqrt(static_cast<double>(n)), n * bratio});
        const double eta = std::max({1.0, std::sqrt(static_cast<double>(n)), anorm_max, c_[k].norm()});
        x[k] = xi * DenseMatrix<S>::Identity(n, n);
        z[k] = eta * DenseMatrix<S>::Identity(n, n);
    }

    const double bnorm = b_.norm();
    const double cnorm = frob(c_);

    BasicSdpSolution<S> out;
    double pinf_orig = 0.0, dinf = 0.0, relgap = 0.0, pobj = 0.0, dobj = 0.0;
    bool done = false;
    int it = 0;

    const auto measure = [&](const RVector &ax, const BlockMatrices<S> &rd) {
        pobj = inner(c_, x);
        dobj = b_.dot(y);
        pinf_orig = 0.0;
        for (int i = 0; i < m_; ++i)
        {
            const double res = row_scale_[i] * b_scale_ * std::abs(b_(i) - ax(i));
            pinf_orig = std::max(pinf_orig, res / (1.0 + std::abs(prob_.constraints[i].rhs)));
        }
        const double pinf_s = (b_ - ax).norm() / (1.0 + bnorm);
        pinf_orig = std::max(pinf_orig, pinf_s);
        dinf = frob(rd) / (1.0 + cnorm);
        const double compl_gap = inner(x, z);
        relgap = std::max(std::abs(pobj - dobj), compl_gap) / (1.0 + std::abs(pobj) + std::abs(dobj));
    };

    for (it = 0; it <= opt.max_iterations; ++it)
    {
        const RVector ax = apply_a(x);
        const RVector rp = b_ - ax;
        BlockMatrices<S> aty = apply_at(y);
        BlockMatrices<S> rd(nb_);
        for (int k = 0; k < nb_; ++k)
            rd[k] = c_[k] - aty[k] - z[k];
        measure(ax, rd);

        if (!std::isfinite(pobj) || !std::isfinite(dobj))
            break;
        if (pinf_orig <= tol && dinf <= tol && relgap <= tol)
        {
            out.status = SdpStatus::optimal;
            done = true;
            break;
        }
        // Certificates on normalized data.
        if (dobj > 1e10 && dinf < 1e-3 * dobj)
        {
            out.status = SdpStatus::infeasible;
            done = true;
            break;
        }
        if (pobj < -1e10 && (ax.norm() - bnorm) < 1e-3 * std::abs(pobj))
        {
            out.status = SdpStatus::unbounded;
            done = true;
            break;
        }
        if (it == opt.max_iterations)
            break;

        const double mu = inner(x, z) / total_n;

        BlockMatrices<S> z_inv(nb_);
        for (int k = 0; k < nb_; ++k)
        {
            Eigen::LLT<DenseMatrix<S>> llt(z[k]);
            if (llt.info() != Eigen::Success)
                throw NumericalError("sdp: dual slack lost definiteness");
            z_inv[k] = hermitian_part<S>(llt.solve(DenseMatrix<S>::Identity(size_[k], size_[k])));
        }

        RMatrix schur;
        assemble_schur(x, z_inv, schur);
        Eigen::LLT<RMatrix> chol(schur);
        double reg = 0.0;
        const double diag_max = m_ ? schur.diagonal().cwiseAbs().maxCoeff() : 1.0;
        while (chol.info() != Eigen::Success)
        {
            reg = reg == 0.0 ? 1e-14 * std::max(diag_max, 1e-300) : reg * 100.0;
            if (reg > 1e-2 * std::max(diag_max, 1e-300))
                throw NumericalError("sdp: Schur complement is not positive definite");
            RMatrix shifted = schur;
            shifted.diagonal().array() += reg;
            chol.compute(shifted);
        }

        // X Rd Z^-1 terms shared by both directions.
        BlockMatrices<S> xrdz(nb_);
        for (int k = 0; k < nb_; ++k)
            xrdz[k] = x[k] * rd[k] * z_inv[k];
        const RVector a_xrdz = apply_a(xrdz);
        const RVector a_zinv = apply_a(z_inv);

        const auto direction = [&](double sigma_mu, const BlockMatrices<S> *corr, const RVector &a_corr,
                                   RVector &dy, BlockMatrices<S> &dx, BlockMatrices<S> &dz) {
            RVector rhs = b_ - sigma_mu * a_zinv + a_xrdz + a_corr;
            dy = chol.solve(rhs);
            const BlockMatrices<S> atdy = apply_at(dy);
            dz.resize(nb_);
            dx.resize(nb_);
            for (int k = 0; k < nb_; ++k)
            {
                dz[k] = rd[k] - atdy[k];
                DenseMatrix<S> t = sigma_mu * z_inv[k] - x[k] - x[k] * dz[k] * z_inv[k];
                if (corr)
                    t -= (*corr)[k];
                dx[k] = hermitian_part<S>(t);
            }
        };
        const auto steps = [&](const BlockMatrices<S> &dx, const BlockMatrices<S> &dz) {
            double ap = std::numeric_limits<double>::infinity();
            double ad = std::numeric_limits<double>::infinity();
            for (int k = 0; k < nb_; ++k)
            {
                ap = std::min(ap, max_step<S>(x[k], dx[k]));
                ad = std::min(ad, max_step<S>(z[k], dz[k]));
            }
            return std::pair<double, double>{ap, ad};
        };

        RVector dy_a;
        BlockMatrices<S> dx_a, dz_a;
        direction(0.0, nullptr, RVector::Zero(m_), dy_a, dx_a, dz_a);
        auto [ap_a, ad_a] = steps(dx_a, dz_a);
        ap_a = std::min(1.0, ap_a);
        ad_a = std::min(1.0, ad_a);
        double mu_aff = 0.0;
        for (int k = 0; k < nb_; ++k)
            mu_aff += inner<S>(DenseMatrix<S>(x[k] + ap_a * dx_a[k]), DenseMatrix<S>(z[k] + ad_a * dz_a[k]));
        mu_aff /= total_n;
        const double expon = std::max(1.0, 3.0 * std::min(ap_a, ad_a) * std::min(ap_a, ad_a));
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, expon), 0.0, 1.0);

        BlockMatrices<S> corr(nb_);
        for (int k = 0; k < nb_; ++k)
            corr[k] = dx_a[k] * dz_a[k] * z_inv[k];
        const RVector a_corr = apply_a(corr);

        RVector dy;
        BlockMatrices<S> dx, dz;
        direction(sigma * mu, &corr, a_corr, dy, dx, dz);
        auto [ap, ad] = steps(dx, dz);
        const double frac = 0.9 + 0.09 * std::min(ap_a, ad_a);
        ap = std::min(1.0, frac * ap);
        ad = std::min(1.0, frac * ad);
        if (!(ap > 0.0) || !(ad > 0.0) || !std::isfinite(ap) || !std::isfinite(ad))
            break;

        for (int k = 0; k < nb_; ++k)
        {
            x[k] = hermitian_part<S>(DenseMatrix<S>(x[k] + ap * dx[k]));
            z[k] = hermitian_part<S>(DenseMatrix<S>(z[k] + ad * dz[k]));
        }
        y += ad * dy;
        if (std::max(ap, ad) < 1e-10)
            break;
    }

    if (!done)
    {
        const double loose = std::max(1e-5, 100.0 * tol);
        out.status = (pinf_orig <= loose && dinf <= loose && relgap <= loose) ? SdpStatus::near_optimal
                                                                              : SdpStatus::iteration_limit;
    }

    out.iterations = std::min(it, opt.max_iterations);
    out.x.resize(nb_);
    out.z.resize(nb_);
    for (int k = 0; k < nb_; ++k)
    {
        out.x[k] = b_scale_ * x[k];
        out.z[k] = c_scale_ * z[k];
    }
    out.y.resize(m_);
    for (int i = 0; i < m_; ++i)
        out.y(i) = c_scale_ * y(i) / row_scale_[i];
    out.primal_residual = pinf_orig;
    out.dual_residual = dinf;
    out.gap = relgap;
    out.primal_objective = c_scale_ * b_scale_ * pobj;
    out.dual_objective = c_scale_ * b_scale_ * dobj;
    return out;
}
} // namespace

template <class S> void BasicSdpProblem<S>::validate() const
{
    if (cost.empty())
        throw ContractError("sdp: at least one block required");
    for (const auto &c : cost)
    {
        if (c.rows() != c.cols() || c.rows() < 1)
            throw ContractError("sdp: cost blocks must be square and non-empty");
        const double scale = std::max(1.0, c.norm());
        if ((c - c.adjoint()).norm() > 1e-12 * scale)
            throw ContractError("sdp: cost block is not Hermitian");
    }
    for (const auto &con : constraints)
        for (const auto &e : con.entries)
        {
            if (e.block < 0 || e.block >= block_count())
                throw ContractError("sdp: constraint entry refers to a missing block");
            const int n = static_cast<int>(cost[e.block].rows());
            if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n || e.row > e.col)
                throw ContractError("sdp: constraint entries must be upper-triangular and in range");
            if (e.row == e.col && std::abs(im(e.value)) > 1e-12 * std::max(1.0, std::abs(re(e.value))))
                throw ContractError("sdp: diagonal constraint entries must be real");
        }
    if (options.tolerance <= 0.0 || options.max_iterations < 1)
        throw ContractError("sdp: invalid options");
    if (schur && schur->covered() > static_cast<int>(constraints.size()))
        throw ContractError("sdp: Schur assembler covers more constraints than present");
}

template <class S> BasicSdpSolution<S> solve(const BasicSdpProblem<S> &problem)
{
    problem.validate();
    Solver<S> solver(problem);
    return solver.run();
}

template <class S> double constraint_value(const SdpConstraint<S> &constraint, const BlockMatrices<S> &x)
{
    double s = 0.0;
    for (const auto &e : constraint.entries)
    {
        const auto &m = x.at(e.block);
        if (e.row == e.col)
            s += re(e.value * m(e.row, e.row));
        else
            s += 2.0 * re(e.value * m(e.col, e.row));
    }
    return s;
}

template <class S> DenseMatrix<S> constraint_matrix(const SdpConstraint<S> &constraint, int block, int size)
{
    DenseMatrix<S> a = DenseMatrix<S>::Zero(size, size);
    for (const auto &e : constraint.entries)
    {
        if (e.block != block)
            continue;
        a(e.row, e.col) += e.value;
        if (e.row != e.col)
            a(e.col, e.row) += conj(e.value);
    }
    return a;
}

template struct BasicSdpProblem<double>;
template struct BasicSdpProblem<cd>;
template BasicSdpSolution<double> solve(const BasicSdpProblem<double> &);
template BasicSdpSolution<cd> solve(const BasicSdpProblem<cd> &);
template double constraint_value(const SdpConstraint<double> &, const BlockMatrices<double> &);
template double constraint_value(const SdpConstraint<cd> &, const BlockMatrices<cd> &);
template DenseMatrix<double> constraint_matrix(const SdpConstraint<double> &, int, int);
template DenseMatrix<cd> constraint_matrix(const SdpConstraint<cd> &, int, int);

RMatrix embed_hermitian(const CMatrix &a)
{
    const Eigen::Index n = a.rows();
    RMatrix r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = a.real();
    r.topRightCorner(n, n) = -a.imag();
    r.bottomLeftCorner(n, n) = a.imag();
    r.bottomRightCorner(n, n) = a.real();
    return r;
}

SdpProblem embed_hermitian(const HermitianSdpProblem &problem)
{
    problem.validate();
    SdpProblem out;
    out.options = problem.options;
    for (const auto &c : problem.cost)
        out.cost.push_back(embed_hermitian(c));
    for (const auto &con : problem.constraints)
    {
        SdpConstraint<double> rc;
        rc.rhs = 2.0 * con.rhs;
        for (const auto &e : con.entries)
        {
            const int n = static_cast<int>(problem.cost[e.block].rows());
            const double vr = e.value.real();
            const double vi = e.value.imag();
            if (vr != 0.0)
            {
                rc.entries.push_back({e.block, e.row, e.col, vr});
                rc.entries.push_back({e.block, n + e.row, n + e.col, vr});
            }
            if (e.row != e.col && vi != 0.0)
            {
                rc.entries.push_back({e.block, e.row, n + e.col, -vi});
                rc.entries.push_back({e.block, e.col, n + e.row, vi});
            }
        }
        out.constraints.push_back(std::move(rc));
    }
    return out;
}

HermitianSdpSolution recover_hermitian(const SdpSolution &embedded)
{
    const auto fold = [](const RMatrix &r) {
        const Eigen::Index n = r.rows() / 2;
        CMatrix c(n, n);
        c.real() = 0.5 * (r.topLeftCorner(n, n) + r.bottomRightCorner(n, n));
        c.imag() = 0.5 * (r.bottomLeftCorner(n, n) - r.topRightCorner(n, n));
        return c;
    };
    HermitianSdpSolution out;
    for (const auto &x : embedded.x)
        out.x.push_back(fold(x));
    for (const auto &z : embedded.z)
        out.z.push_back(fold(z));
    out.y = embedded.y;
    out.status = embedded.status;
    out.primal_residual = embedded.primal_residual;
    out.dual_residual = embedded.dual_residual;
    out.gap = embedded.gap;
    out.primal_objective = 0.5 * embedded.primal_objective;
    out.dual_objective = 0.5 * embedded.dual_objective;
    out.iterations = embedded.iterations;
    return out;
}
} // namespace bdris
