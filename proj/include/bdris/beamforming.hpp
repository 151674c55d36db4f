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
#include "bdris/ris_core.hpp"
#include "bdris/sdp.hpp"
#include "bdris/types.hpp"
#include "bdris/waveform.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bdris
{
enum class Algorithm
{
    sdr,
    sdp,
    sca,
    it,
    dris_sdr,
    dris_los,
};

std::string to_string(Algorithm kind);
// Accepts sdr, sdp, sca, it, dris (= dris-sdr), dris-sdr, dris-los.
Algorithm parse_algorithm(const std::string &name);

struct BeamformerConfig
{
    Algorithm kind = Algorithm::sdr;
    double tolerance = 1e-4;       // relative change, outer and relaxation loops
    double gamma = 0.01;           // Neumann step sizing
    double step_control = 0.5;     // rho_omega
    double sigma0 = 1e-5;          // SCA penalty on Tr(S)
    double trust_radius = 1.0;     // SCA, Frobenius
    int randomization_draws = 10000;
    int feasibility_draws = 10000;
    int max_outer = 10;
    int max_inner = 8;             // SDR, SDP and SCA solves per outer iteration
    int max_inner_it = 400;        // IT-BDRIS steps per outer iteration
    double rank_penalty = 1e-3;    // SDP-BDRIS initial penalty weight, relative to ||K1||_2
    double dominance_target = 0.99;
    int group_size = 0;            // IT-BDRIS topology, 0 = fully connected
    std::uint64_t seed = 0;
    SdpOptions sdp;

    void validate() const;
};

// Lifted SDR data for products y_n = s_n a_n^T theta.
struct SdrData
{
    CMatrix z;              // dim x N, column n is z_n = conj(s_n a_n)
    std::vector<CMatrix> d; // D_k = sum_n z_n z_{n+k}^H, k = 0..N-1
    RectifierParams params;

    int dim() const { return static_cast<int>(z.rows()); }
    int subcarriers() const { return static_cast<int>(z.cols()); }

    // d_k = Tr(D_k X) and theta^H D_k theta.
    CVector lags(const CMatrix &x) const;
    CVector lags_of(const CVector &theta) const;
    // i_dc as a function of the lags.
    double objective(const CVector &lags) const;
    double objective_of(const CVector &theta) const;
    // Minimization cost of the linearized objective at the given lags.
    CMatrix k1(const CVector &lags) const;
};

// a: N x dim, row n is a_n^T.
SdrData build_sdr_data(const CMatrix &a, const CVector &s, const RectifierParams &params);
// BD-RIS coefficients a_n = P^T Vec(h_I h_R^T), with h_D appended when augmented.
CMatrix bdris_coefficients(const ChannelRealization &channels, bool augmented);
// D-RIS coefficients a_n = h_R o h_I, with h_D appended when augmented.
CMatrix dris_coefficients(const ChannelRealization &channels, bool augmented);

// Constraint set of a lifted problem.
struct Relaxation
{
    int elements = 0;
    int dim = 0;
    bool diagonal = false;  // D-RIS: theta holds the M phases
    bool augmented = false; // last coordinate is the auxiliary direct-link variable g
    std::vector<SdpConstraint<cd>> constraints;
    std::shared_ptr<const SchurAssembler<cd>> schur;
};

// Tr(X Pbar_ii) = 1 and Tr(X Pbar_ij) = 0 as M^2 real constraints, plus X_gg = 1 when augmented.
Relaxation bdris_relaxation(int elements, bool augmented);
// diag(X) = 1.
Relaxation dris_relaxation(int elements, bool augmented);

// Structured Schur rows of the unitarity constraints, exact same order as bdris_relaxation.
std::shared_ptr<const SchurAssembler<cd>> unitarity_schur(int elements);

struct RelaxationStep
{
    CMatrix x;
    SdpStatus status = SdpStatus::iteration_limit;
    double primal_residual = 0.0;
    int iterations = 0;
};

RelaxationStep sdr_step(const SdrData &data, const CVector &lags, const Relaxation &relaxation,
                        const SdpOptions &options = {});
// Penalized rank surrogate: adds eta (Tr X - Re<X_bar, X>/||X_bar||_F) to the cost.
RelaxationStep sdp_rank_step(const SdrData &data, const CVector &lags, const CMatrix &x_bar, double eta,
                             const Relaxation &relaxation, const SdpOptions &options = {});

// Largest eigenvalue over the eigenvalue sum (negative eigenvalues clipped).
double dominance_ratio(const CMatrix &x);

// Scale a lifted vector to the feasible set shape: g = 1 when augmented, then ||Theta||_F^2 = M
// (BD-RIS) or unit-modulus entries (D-RIS). Throws SignalError when |g| is degenerate.
CVector normalize_candidate(const CVector &theta, const Relaxation &relaxation);

struct Randomized
{
    CVector theta; // normalized
    double objective = 0.0;
    bool principal = false; // deterministic rank-1 branch
};

Randomized gaussian_randomization(const CMatrix &x, const SdrData &data, const Relaxation &relaxation, int draws,
                                  std::uint64_t seed);

// Symmetric Theta from a (possibly augmented) lifted BD-RIS vector.
CMatrix theta_from_lifted(const CVector &theta, int elements);
CVector lifted_from_theta(const CMatrix &theta, bool augmented);

struct ScaStep
{
    CMatrix theta;
    bool ok = false;
    SdpStatus status = SdpStatus::iteration_limit;
};

ScaStep sca_bdris_step(const CMatrix &theta_prev, const ChannelRealization &channels, const CVector &s,
                       const RectifierParams &params, double sigma, double trust_radius,
                       const SdpOptions &options = {});

// First-order coefficient u = d i_dc / d conj(omega) of the linearized cascade at Z.
CVector it_bdris_direction(const CMatrix &impedance, const ChannelRealization &channels, const CVector &s,
                           const RectifierParams &params, const PermutationMatrix &p);
// Closed-form step: tau u_r/|u_r| on free slots, zero elsewhere.
CVector it_bdris_step(const CVector &u, double tau, const Topology &topology);
double it_bdris_radius(const CMatrix &impedance, double gamma, double z0 = kReferenceImpedance);

struct ItResult
{
    CMatrix impedance;
    std::vector<double> idc_trace; // entry 0 is the starting point
    int iterations = 0;
};

ItResult it_bdris_inner(const CMatrix &impedance, const ChannelRealization &channels, const CVector &s,
                        const RectifierParams &params, const Topology &topology, double gamma, double step_control,
                        double tolerance, int max_iters);

enum class DrisMode
{
    los_closed_form,
    sdr_diagonal,
};

// Reference subcarrier of the closed form, 0-based: ceil(N/2) - 1.
int dris_reference_subcarrier(int subcarriers);
CMatrix dris_baseline(const ChannelRealization &channels, const CVector &s, DrisMode mode,
                      const RectifierParams &params = {}, const BeamformerConfig &cfg = {});

struct OptimizerReport
{
    Algorithm kind = Algorithm::sdr;
    std::vector<double> idc_trace;  // exact i_dc after each outer iteration, entry 0 at the start point
    std::vector<int> inner_counts;  // beamforming iterations per outer iteration
    CVector weights;
    CMatrix theta;                  // feasible
    double raw_idc = 0.0;           // before the feasibility map
    double idc = 0.0;               // reported, feasible Theta
    double unitarity_residual = 0.0;
    double symmetry_residual = 0.0;
    std::optional<double> dominance;
    std::map<std::string, double> seconds; // per stage
    std::vector<std::string> flags;       // non-fatal solver issues
    int outer_iterations = 0;
};

OptimizerReport alternating_optimize(const ChannelRealization &channels, double transmit_power,
                                     const BeamformerConfig &cfg, const WaveformOptConfig &waveform,
                                     const RectifierParams &params);

// Requires a direct link.
OptimizerReport with_direct_link(const ChannelRealization &channels, double transmit_power,
                                 const BeamformerConfig &cfg, const WaveformOptConfig &waveform,
                                 const RectifierParams &params);
} // namespace bdris
