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

#include <chrono>
#include <cmath>

namespace bdris
{
std::string to_string(Algorithm kind)
{
    switch (kind)
    {
    case Algorithm::sdr:
        return "sdr";
    case Algorithm::sdp:
        return "sdp";
    case Algorithm::sca:
        return "sca";
    case Algorithm::it:
        return "it";
    case Algorithm::dris_sdr:
        return "dris-sdr";
    case Algorithm::dris_los:
        return "dris-los";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string &name)
{
    if (name == "sdr")
        return Algorithm::sdr;
    if (name == "sdp")
        return Algorithm::sdp;
    if (name == "sca")
        return Algorithm::sca;
    if (name == "it")
        return Algorithm::it;
    if (name == "dris" || name == "dris-sdr")
        return Algorithm::dris_sdr;
    if (name == "dris-los")
        return Algorithm::dris_los;
    throw DomainError("unknown algorithm '" + name + "'");
}

void BeamformerConfig::validate() const
{
    if (!(tolerance > 0.0))
        throw DomainError("beamformer: tolerance must be positive");
    if (!(gamma > 0.0 && gamma <= 0.1))
        throw DomainError("beamformer: gamma must lie in (0, 0.1]");
    if (!(step_control > 0.0 && step_control <= 1.0))
        throw DomainError("beamformer: step control must lie in (0, 1]");
    if (!(sigma0 > 0.0) || !(trust_radius > 0.0))
        throw DomainError("beamformer: SCA penalty and trust radius must be positive");
    if (randomization_draws < 0 || feasibility_draws < 1)
        throw DomainError("beamformer: invalid draw counts");
    if (max_outer < 1 || max_inner < 1 || max_inner_it < 1)
        throw DomainError("beamformer: iteration limits must be positive");
    if (!(rank_penalty > 0.0) || !(dominance_target > 0.0 && dominance_target <= 1.0))
        throw DomainError("beamformer: invalid rank penalty settings");
    if (group_size < 0)
        throw DomainError("beamformer: negative group size");
    if (!(sdp.tolerance > 0.0) || sdp.max_iterations < 1)
        throw DomainError("beamformer: invalid SDP options");
}

int dris_reference_subcarrier(int subcarriers)
{
    if (subcarriers < 1)
        throw ContractError("dris_reference_subcarrier: at least one subcarrier required");
    return (subcarriers + 1) / 2 - 1;
}

namespace
{
bool has_direct_gain(const ChannelRealization &channels)
{
    return channels.direct && channels.direct->cwiseAbs().maxCoeff() > 0.0;
}

CMatrix dris_los(const ChannelRealization &channels)
{
    const int m = channels.elements();
    const int n = dris_reference_subcarrier(channels.subcarriers());
    const double reference = has_direct_gain(channels) ? std::arg((*channels.direct)(n)) : 0.0;
    CMatrix theta = CMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
        theta(i, i) = std::polar(1.0, reference - std::arg(channels.reflective(n, i)) - std::arg(channels.incident(n, i)));
    return theta;
}

CMatrix dris_sdr(const ChannelRealization &channels, const CVector &s, const RectifierParams &params,
                 const BeamformerConfig &cfg, const CMatrix &start, std::uint64_t seed, double *dominance,
                 int *solves, std::vector<std::string> *flags)
{
    const int m = channels.elements();
    const bool augmented = has_direct_gain(channels);
    const Relaxation relaxation = dris_relaxation(m, augmented);
    CVector lifted(relaxation.dim);
    lifted.head(m) = start.diagonal();
    if (augmented)
        lifted(m) = 1.0;
    const auto out = detail::relaxed_beamforming(dris_coefficients(channels, augmented), s, params, relaxation,
                                                 lifted, false, cfg, seed);
    if (dominance)
        *dominance = out.dominance;
    if (solves)
        *solves = out.solves;
    if (flags)
        flags->insert(flags->end(), out.flags.begin(), out.flags.end());
    return out.theta.head(m).asDiagonal();
}
} // namespace

CMatrix dris_baseline(const ChannelRealization &channels, const CVector &s, DrisMode mode,
                      const RectifierParams &params, const BeamformerConfig &cfg)
{
    if (s.size() != channels.subcarriers())
        throw ContractError("dris_baseline: one weight per subcarrier required");
    if (mode == DrisMode::los_closed_form)
        return dris_los(channels);
    cfg.validate();
    const int m = channels.elements();
    return dris_sdr(channels, s, params, cfg, kJ * CMatrix::Identity(m, m),
                    derive_seed(cfg.seed, Stream::randomization), nullptr, nullptr, nullptr);
}

namespace
{
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool maps_at_end(Algorithm kind)
{
    return kind == Algorithm::sdr || kind == Algorithm::sdp || kind == Algorithm::sca;
}

Topology topology_for(const BeamformerConfig &cfg, int m)
{
    return cfg.group_size == 0 ? Topology::fully_connected(m) : Topology::group_connected(m, cfg.group_size);
}
} // namespace

OptimizerReport alternating_optimize(const ChannelRealization &channels, double transmit_power,
                                     const BeamformerConfig &cfg, const WaveformOptConfig &waveform,
                                     const RectifierParams &params)
{
    cfg.validate();
    waveform.validate();
    params.validate();
    if (!(transmit_power > 0.0))
        throw DomainError("alternating_optimize: transmit power must be positive");
    const int m = channels.elements();
    const int n_count = channels.subcarriers();
    if (m < 1 || n_count < 1 || channels.reflective.rows() != n_count || channels.reflective.cols() != m)
        throw ContractError("alternating_optimize: malformed channels");

    const bool augmented = has_direct_gain(channels);
    OptimizerReport report;
    report.kind = cfg.kind;

    CMatrix impedance = kJ * kReferenceImpedance * CMatrix::Identity(m, m);
    CMatrix theta = scattering_from_impedance(impedance);
    CVector s = smf_init(cascade_response(channels, theta), transmit_power, waveform.beta);
    double current = idc(s, cascade_response(channels, theta), params);
    report.idc_trace.push_back(current);

    Relaxation relaxation;
    CMatrix coefficients;
    if (cfg.kind == Algorithm::sdr || cfg.kind == Algorithm::sdp)
    {
        relaxation = bdris_relaxation(m, augmented);
        coefficients = bdris_coefficients(channels, augmented);
    }
    const Topology topology = topology_for(cfg, m);
    double sigma = cfg.sigma0;
    double beam_seconds = 0.0;
    double wave_seconds = 0.0;

    for (int outer = 0; outer < cfg.max_outer; ++outer)
    {
        const double previous = current;
        const std::uint64_t seed = derive_seed(cfg.seed, Stream::randomization, static_cast<std::uint64_t>(outer));
        auto t0 = Clock::now();
        CMatrix candidate = theta;
        int inner = 0;
        switch (cfg.kind)
        {
        case Algorithm::sdr:
        case Algorithm::sdp: {
            const auto out = detail::relaxed_beamforming(coefficients, s, params, relaxation,
                                                         lifted_from_theta(theta, augmented),
                                                         cfg.kind == Algorithm::sdp, cfg, seed);
            candidate = theta_from_lifted(out.theta, m);
            report.dominance = out.dominance;
            inner = out.solves;
            report.flags.insert(report.flags.end(), out.flags.begin(), out.flags.end());
            break;
        }
        case Algorithm::dris_sdr: {
            double dr = 0.0;
            candidate = dris_sdr(channels, s, params, cfg, theta, seed, &dr, &inner, &report.flags);
            report.dominance = dr;
            break;
        }
        case Algorithm::dris_los:
            candidate = dris_los(channels);
            inner = 1;
            break;
        case Algorithm::sca: {
            CMatrix point = theta;
            double best = current;
            double last = current;
            for (int t = 0; t < cfg.max_inner; ++t)
            {
                const ScaStep step = sca_bdris_step(point, channels, s, params, sigma, cfg.trust_radius, cfg.sdp);
                ++inner;
                if (!step.ok)
                {
                    report.flags.push_back("sca solve " + to_string(step.status));
                    break;
                }
                sigma = std::min(1.0, 1.5 * sigma);
                point = step.theta;
                const double value = idc(s, cascade_response(channels, point), params);
                if (value > best)
                {
                    best = value;
                    candidate = point;
                }
                const bool settled = std::abs(1.0 - last / value) <= cfg.tolerance;
                last = value;
                if (settled)
                    break;
            }
            break;
        }
        case Algorithm::it: {
            const ItResult r = it_bdris_inner(impedance, channels, s, params, topology, cfg.gamma, cfg.step_control,
                                              cfg.tolerance, cfg.max_inner_it);
            impedance = r.impedance;
            candidate = scattering_from_impedance(impedance);
            inner = r.iterations;
            break;
        }
        }
        report.inner_counts.push_back(inner);
        const double value = idc(s, cascade_response(channels, candidate), params);
        if (value >= current)
        {
            theta = candidate;
            current = value;
        }
        beam_seconds += since(t0);

        t0 = Clock::now();
        const CVector h = cascade_response(channels, theta);
        const WaveformResult wf = it_wf(h, transmit_power, waveform, params, RVector(s.cwiseAbs()));
        const double refreshed = idc(wf.weights, h, params);
        if (refreshed >= current)
        {
            s = wf.weights;
            current = refreshed;
        }
        wave_seconds += since(t0);

        report.idc_trace.push_back(current);
        ++report.outer_iterations;
        if (std::abs(1.0 - previous / current) <= cfg.tolerance)
            break;
    }
    report.seconds["beamforming"] = beam_seconds;
    report.seconds["waveform"] = wave_seconds;
    report.raw_idc = current;

    auto t0 = Clock::now();
    if (maps_at_end(cfg.kind))
    {
        const FeasibilityResult fm = feasibility_map(0.5 * (theta + theta.transpose()), channels, s, params,
                                                     cfg.feasibility_draws, derive_seed(cfg.seed, Stream::feasibility));
        theta = fm.theta;
        const CVector h = cascade_response(channels, theta);
        const WaveformResult wf = it_wf(h, transmit_power, waveform, params, RVector(s.cwiseAbs()));
        if (idc(wf.weights, h, params) >= idc(s, h, params))
            s = wf.weights;
    }
    report.seconds["mapping"] = since(t0);

    report.theta = theta;
    report.weights = s;
    report.idc = idc(s, cascade_response(channels, theta), params);
    report.unitarity_residual = unitarity_residual(theta);
    report.symmetry_residual = symmetry_residual(theta);
    return report;
}

OptimizerReport with_direct_link(const ChannelRealization &channels, double transmit_power,
                                 const BeamformerConfig &cfg, const WaveformOptConfig &waveform,
                                 const RectifierParams &params)
{
    if (!channels.direct)
        throw ContractError("with_direct_link: channels carry no direct link");
    return alternating_optimize(channels, transmit_power, cfg, waveform, params);
}
} // namespace bdris
