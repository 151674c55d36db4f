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
#pragma once

#include "bdris/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace bdris
{
// Standard form: minimize <C, X> subject to <A_i, X> = b_i, X PSD (block diagonal),
// where <A, X> = Re Tr(A X). Dual: maximize b^T y subject to C - sum_i y_i A_i = Z PSD.

template <class Scalar> using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar> using BlockMatrices = std::vector<DenseMatrix<Scalar>>;

// Upper-triangle entry (row <= col); the mirrored entry is the conjugate.
template <class Scalar> struct SdpEntry
{
    int block = 0;
    int row = 0;
    int col = 0;
    Scalar value{};
};

template <class Scalar> struct SdpConstraint
{
    std::vector<SdpEntry<Scalar>> entries;
    double rhs = 0.0;
};

struct SdpOptions
{
    double tolerance = 1e-7;
    int max_iterations = 100;
};

enum class SdpStatus
{
    optimal,
    near_optimal,
    infeasible,
    unbounded,
    iteration_limit,
};

std::string to_string(SdpStatus status);

// Fast path for the Schur complement of a structured leading group of constraints.
// Fills M(i, j) = Re Tr(A_i X A_j Z^-1) for i, j < covered(), unscaled data.
template <class Scalar> class SchurAssembler
{
  public:
    virtual ~SchurAssembler() = default;
    virtual int covered() const = 0;
    virtual void assemble(const BlockMatrices<Scalar> &x, const BlockMatrices<Scalar> &z_inv,
                          RMatrix &schur) const = 0;
};

template <class Scalar> struct BasicSdpProblem
{
    BlockMatrices<Scalar> cost; // one (possibly zero) Hermitian matrix per block
    std::vector<SdpConstraint<Scalar>> constraints;
    SdpOptions options;
    std::shared_ptr<const SchurAssembler<Scalar>> schur;

    int block_count() const { return static_cast<int>(cost.size()); }
    void validate() const;
};

template <class Scalar> struct BasicSdpSolution
{
    BlockMatrices<Scalar> x;
    BlockMatrices<Scalar> z;
    RVector y;
    SdpStatus status = SdpStatus::iteration_limit;
    double primal_residual = 0.0; // max_i |b_i - <A_i, X>| / (1 + |b_i|)
    double dual_residual = 0.0;   // relative, normalized data
    double gap = 0.0;             // relative, normalized data
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    int iterations = 0;

    bool usable() const { return status == SdpStatus::optimal || status == SdpStatus::near_optimal; }
};

using SdpProblem = BasicSdpProblem<double>;
using SdpSolution = BasicSdpSolution<double>;
using HermitianSdpProblem = BasicSdpProblem<cd>;
using HermitianSdpSolution = BasicSdpSolution<cd>;

template <class Scalar> BasicSdpSolution<Scalar> solve(const BasicSdpProblem<Scalar> &problem);

template <class Scalar>
double constraint_value(const SdpConstraint<Scalar> &constraint, const BlockMatrices<Scalar> &x);

// Dense Hermitian matrix of one constraint on one block.
template <class Scalar>
DenseMatrix<Scalar> constraint_matrix(const SdpConstraint<Scalar> &constraint, int block, int size);

// Real embedding [[Re, -Im], [Im, Re]] per block. Every value doubles: <A_r, X_r> = 2 <A, X>,
// so right-hand sides are doubled and the embedded objective is twice the complex one.
RMatrix embed_hermitian(const CMatrix &a);
SdpProblem embed_hermitian(const HermitianSdpProblem &problem);

// X = (X11 + X22)/2 + j (X21 - X12)/2 per block; y carries over; objectives halve.
HermitianSdpSolution recover_hermitian(const SdpSolution &embedded);
} // namespace bdris
