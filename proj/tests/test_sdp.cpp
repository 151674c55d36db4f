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
#include "bdris/sdp.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace bdris;

namespace
{
template <class S> DenseMatrix<S> random_hermitian(int n, Rng &rng);

template <> RMatrix random_hermitian<double>(int n, Rng &rng)
{
    RMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = rng.normal();
    return 0.5 * (a + a.transpose());
}

template <> CMatrix random_hermitian<cd>(int n, Rng &rng)
{
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = rng.complex_normal();
    return 0.5 * (a + a.adjoint());
}

template <class S> SdpConstraint<S> dense_constraint(const DenseMatrix<S> &a, double rhs)
{
    SdpConstraint<S> c;
    c.rhs = rhs;
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i <= j; ++i)
            c.entries.push_back({0, i, j, a(i, j)});
    return c;
}

// Strictly feasible primal and dual by construction.
template <class S> BasicSdpProblem<S> random_problem(int n, int m, Rng &rng)
{
    BasicSdpProblem<S> p;
    const DenseMatrix<S> g = random_hermitian<S>(n, rng);
    const DenseMatrix<S> x0 = g * g.adjoint() + DenseMatrix<S>::Identity(n, n);
    const DenseMatrix<S> h = random_hermitian<S>(n, rng);
    DenseMatrix<S> c = h * h.adjoint() + 0.5 * DenseMatrix<S>::Identity(n, n);
    for (int i = 0; i < m; ++i)
    {
        const DenseMatrix<S> a = random_hermitian<S>(n, rng);
        double rhs = 0.0;
        for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q)
                rhs += std::real(a(r, q) * x0(q, r));
        p.constraints.push_back(dense_constraint<S>(a, rhs));
        c += rng.normal() * a;
    }
    p.cost.push_back(0.5 * (c + c.adjoint()));
    return p;
}

double min_eig(const RMatrix &a)
{
    return Eigen::SelfAdjointEigenSolver<RMatrix>(a, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

RMatrix project_psd(const RMatrix &a)
{
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (a + a.transpose()));
    const RVector l = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

// Operator-splitting oracle: alternate an affine projection and a PSD projection.
double admm_oracle(const SdpProblem &p, int iterations)
{
    const int n = static_cast<int>(p.cost[0].rows());
    const int m = static_cast<int>(p.constraints.size());
    RMatrix amat(m, n * n);
    RVector b(m);
    for (int i = 0; i < m; ++i)
    {
        amat.row(i) = constraint_matrix(p.constraints[i], 0, n).reshaped().transpose();
        b(i) = p.constraints[i].rhs;
    }
    const RMatrix gram_inv = (amat * amat.transpose()).inverse();
    const RMatrix &c = p.cost[0];
    RMatrix w = RMatrix::Identity(n, n);
    RMatrix u = RMatrix::Zero(n, n);
    RMatrix x = w;
    const double rho = 1.0;
    for (int it = 0; it < iterations; ++it)
    {
        const RVector v = (w - u - c / rho).reshaped();
        x = (v - amat.transpose() * (gram_inv * (amat * v - b))).reshaped(n, n);
        w = project_psd(x + u);
        u += x - w;
    }
    return (c.array() * w.array()).sum();
}
} // namespace

TEST_CASE("scalar problem")
{
    SdpProblem p;
    p.cost.push_back(RMatrix::Constant(1, 1, 3.0));
    p.constraints.push_back({{{0, 0, 0, 1.0}}, 2.5});
    const auto s = solve(p);
    CHECK(s.status == SdpStatus::optimal);
    CHECK(s.x[0](0, 0) == doctest::Approx(2.5).epsilon(1e-7));
    CHECK(s.primal_objective == doctest::Approx(7.5).epsilon(1e-6));
}

TEST_CASE("eigenvalue allocation")
{
    SdpProblem p;
    RMatrix c = RMatrix::Zero(2, 2);
    c(0, 0) = 1.0;
    c(1, 1) = 2.0;
    p.cost.push_back(c);
    p.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, 1.0});
    const auto s = solve(p);
    CHECK(s.status == SdpStatus::optimal);
    CHECK(s.primal_objective == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(s.x[0](0, 0) - 1.0) < 1e-6);
    CHECK(std::abs(s.x[0](1, 1)) < 1e-6);
}

TEST_CASE("random real problems against the splitting oracle")
{
    Rng rng(1);
    for (int trial = 0; trial < 5; ++trial)
    {
        const SdpProblem p = random_problem<double>(4, 3, rng);
        const auto s = solve(p);
        REQUIRE(s.status == SdpStatus::optimal);
        const double oracle = admm_oracle(p, 20000);
        CHECK(std::abs(s.primal_objective - oracle) <= 1e-5 * std::max(1.0, std::abs(oracle)));

        // contracts
        CHECK(min_eig(s.x[0]) >= -1e-7);
        for (const auto &c : p.constraints)
            CHECK(std::abs(constraint_value(c, s.x) - c.rhs) <= 1e-7 * (1 + std::abs(c.rhs)));
        CHECK(s.gap <= 1e-7);
        CHECK(s.primal_objective >= s.dual_objective - 1e-6 * (1 + std::abs(s.primal_objective)));

        // independent duality certificate
        RMatrix z = p.cost[0];
        for (std::size_t i = 0; i < p.constraints.size(); ++i)
            z -= s.y(static_cast<Eigen::Index>(i)) * constraint_matrix(p.constraints[i], 0, 4);
        CHECK(min_eig(z) >= -1e-6 * z.norm());
    }
}

TEST_CASE("multi-block problems")
{
    Rng rng(2);
    SdpProblem a = random_problem<double>(3, 2, rng);
    SdpProblem b = random_problem<double>(4, 2, rng);
    SdpProblem joint;
    joint.cost = {a.cost[0], b.cost[0]};
    joint.constraints = a.constraints;
    for (auto c : b.constraints)
    {
        for (auto &e : c.entries)
            e.block = 1;
        joint.constraints.push_back(c);
    }
    const auto sa = solve(a);
    const auto sb = solve(b);
    const auto sj = solve(joint);
    REQUIRE(sj.status == SdpStatus::optimal);
    CHECK(sj.primal_objective == doctest::Approx(sa.primal_objective + sb.primal_objective).epsilon(1e-6));
}

TEST_CASE("Hermitian problems and the real embedding")
{
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial)
    {
        HermitianSdpProblem p = random_problem<cd>(4, 5, rng);
        // X is only determined to about sqrt(gap), so solve tightly before comparing it.
        p.options.tolerance = 1e-11;
        const auto native = solve(p);
        REQUIRE(native.status == SdpStatus::optimal);
        const SdpProblem e = embed_hermitian(p);
        const auto embedded = solve(e);
        REQUIRE(embedded.status == SdpStatus::optimal);
        const auto back = recover_hermitian(embedded);
        CHECK(std::abs(back.primal_objective - native.primal_objective) <=
              1e-8 * std::max(1.0, std::abs(native.primal_objective)) * 10);
        CHECK((back.x[0] - native.x[0]).norm() <= 1e-5 * std::max(1.0, native.x[0].norm()));
        for (const auto &c : p.constraints)
            CHECK(std::abs(constraint_value(c, back.x) - c.rhs) <= 1e-6 * (1 + std::abs(c.rhs)));
    }
}

TEST_CASE("embedding bookkeeping")
{
    CMatrix a(1, 1);
    a(0, 0) = cd(2.0, 0.0);
    const RMatrix r = embed_hermitian(a);
    CHECK(r == 2.0 * RMatrix::Identity(2, 2));

    Rng rng(4);
    const CMatrix h = random_hermitian<cd>(3, rng);
    const CMatrix x = random_hermitian<cd>(3, rng);
    const double complex_value = (h * x).trace().real();
    const double real_value = (embed_hermitian(h) * embed_hermitian(x)).trace();
    CHECK(real_value == doctest::Approx(2.0 * complex_value).epsilon(1e-13));

    // Real data embeds as two decoupled copies.
    SdpProblem real = random_problem<double>(3, 2, rng);
    real.options.tolerance = 1e-11;
    HermitianSdpProblem as_complex;
    as_complex.options = real.options;
    as_complex.cost.push_back(real.cost[0].cast<cd>());
    for (const auto &c : real.constraints)
    {
        SdpConstraint<cd> cc;
        cc.rhs = c.rhs;
        for (const auto &e : c.entries)
            cc.entries.push_back({e.block, e.row, e.col, cd(e.value)});
        as_complex.constraints.push_back(cc);
    }
    const auto direct = solve(real);
    const auto via = recover_hermitian(solve(embed_hermitian(as_complex)));
    CHECK((via.x[0].real() - direct.x[0]).norm() < 1e-5);
    CHECK(via.x[0].imag().norm() < 1e-6);

    HermitianSdpProblem bad;
    CMatrix nh = CMatrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    bad.cost.push_back(nh);
    CHECK_THROWS_AS(embed_hermitian(bad), ContractError);
}

TEST_CASE("infeasible and unbounded problems are reported")
{
    SdpProblem infeasible;
    infeasible.cost.push_back(RMatrix::Ones(1, 1));
    infeasible.constraints.push_back({{{0, 0, 0, 1.0}}, -1.0});
    CHECK(solve(infeasible).status == SdpStatus::infeasible);

    SdpProblem unbounded;
    RMatrix c = RMatrix::Zero(2, 2);
    c(0, 0) = -1.0;
    unbounded.cost.push_back(c);
    unbounded.constraints.push_back({{{0, 1, 1, 1.0}}, 1.0});
    CHECK(solve(unbounded).status == SdpStatus::unbounded);
}

TEST_CASE("malformed problems")
{
    SdpProblem p;
    p.cost.push_back(RMatrix::Identity(2, 2));
    p.constraints.push_back({{{0, 1, 0, 1.0}}, 1.0});
    CHECK_THROWS_AS(solve(p), ContractError);
    p.constraints = {{{{3, 0, 0, 1.0}}, 1.0}};
    CHECK_THROWS_AS(solve(p), ContractError);
}

TEST_CASE("deterministic")
{
    Rng rng(5);
    const HermitianSdpProblem p = random_problem<cd>(5, 4, rng);
    const auto a = solve(p);
    const auto b = solve(p);
    CHECK(a.x[0] == b.x[0]);
    CHECK(a.y == b.y);
}
