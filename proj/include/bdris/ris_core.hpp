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

#include "bdris/channel_model.hpp"
#include "bdris/rectenna.hpp"
#include "bdris/types.hpp"

#include <cstdint>
#include <vector>

namespace bdris
{
inline constexpr double kReferenceImpedance = 50.0;

// Largest max|Omega_ij| * ||(Z + Z0 I)^-1||_inf accepted by the first-order inverse.
inline constexpr double kNeumannRatioLimit = 0.5;

CMatrix scattering_from_impedance(const CMatrix &impedance, double z0 = kReferenceImpedance);

// Zero/one matrix P with P * halfvec(Theta) = Vec(Theta) for symmetric Theta.
// Vec position col*M + row maps to slot c(c+1)/2 + r where (r, c) = (min, max) of (row, col).
class PermutationMatrix
{
  public:
    explicit PermutationMatrix(int elements);

    int elements() const { return m_; }
    int half_size() const { return m_ * (m_ + 1) / 2; }
    int slot(int row, int col) const;
    int slot_of_vec(int vec_position) const { return map_[vec_position]; }
    bool is_diagonal_slot(int k) const;
    // (row, col) with row <= col for a slot.
    std::pair<int, int> entry(int k) const { return entries_[k]; }

    CVector pack(const CMatrix &symmetric) const;  // halfvec
    CMatrix unpack(const CVector &half) const;     // Vec^-1(P half)
    CVector transpose_apply(const CVector &vec) const; // P^T vec
    RMatrix dense() const;

  private:
    int m_;
    std::vector<int> map_;
    std::vector<std::pair<int, int>> entries_;
};

PermutationMatrix permutation_matrix(int elements);

cd cascade_channel(const CMatrix &theta, const CVector &h_r, const CVector &h_i);

// a = P^T Vec(h_I h_R^T), so that h_R^T Theta h_I = a^T halfvec(Theta).
CVector cascade_coefficients(const PermutationMatrix &p, const CVector &h_r, const CVector &h_i);

// Per-subcarrier end-to-end channel including the direct link when present.
CVector cascade_response(const ChannelRealization &channels, const CMatrix &theta);

double neumann_ratio(const CMatrix &impedance, const CMatrix &omega, double z0 = kReferenceImpedance);
CMatrix neumann_approx_inverse(const CMatrix &impedance, const CMatrix &omega, double z0 = kReferenceImpedance,
                               double ratio_limit = kNeumannRatioLimit);

// First-order model h(Z + Omega) ~ constant - gradient^T halfvec(Omega).
struct LinearizedCascade
{
    cd constant;
    CVector gradient;
};

LinearizedCascade linearize_cascade(const CMatrix &impedance, const CVector &h_r, const CVector &h_i,
                                    const PermutationMatrix &p, double z0 = kReferenceImpedance);
cd linearized_cascade(const CMatrix &impedance, const CMatrix &omega, const CVector &h_r, const CVector &h_i,
                      double z0 = kReferenceImpedance, double ratio_limit = kNeumannRatioLimit);

// Complex symmetric A = Q diag(sigma) Q^T with unitary Q.
struct Takagi
{
    CMatrix q;
    RVector sigma;
};
Takagi takagi_factorization(const CMatrix &symmetric);

double unitarity_residual(const CMatrix &theta);
double symmetry_residual(const CMatrix &theta);

struct FeasibilityResult
{
    CMatrix theta;
    double idc = 0.0;
    double idc_zero_phase = 0.0;
};

// Replaces the singular values of the candidate by unit-modulus phases and keeps the best draw.
FeasibilityResult feasibility_map(const CMatrix &candidate, const ChannelRealization &channels, const CVector &s,
                                  const RectifierParams &params, int draws, std::uint64_t seed);

// Half-vector positions that are structurally zero.
class Topology
{
  public:
    static Topology fully_connected(int elements);
    static Topology diagonal(int elements);
    static Topology group_connected(int elements, int group_size);

    int elements() const { return m_; }
    bool is_free(int slot) const { return free_[slot]; }
    int free_count() const;
    const std::vector<bool> &mask() const { return free_; }

  private:
    Topology(int elements, std::vector<bool> free) : m_(elements), free_(std::move(free)) {}
    int m_;
    std::vector<bool> free_;
};
} // namespace bdris
