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

#include "bdris/rng.hpp"
#include "bdris/types.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace bdris
{
inline constexpr double kReferencePathGain = 1e-4; // -40 dB at 1 m
inline constexpr double kInfiniteKappa = std::numeric_limits<double>::infinity();

// Subcarrier frequencies f_n = f_c + n * BW / N for n = 0..N-1.
struct CarrierPlan
{
    double lowest_frequency = 2.4e9;
    int subcarriers = 4;
    double bandwidth = 10e6;

    double spacing() const { return bandwidth / subcarriers; }
    double frequency(int n) const { return lowest_frequency + n * spacing(); }
    void validate() const;
};

struct Geometry
{
    int elements = 16;
    double d_incident = 2.0;
    double d_reflective = 2.0;
    double d_direct = 2.0;
    double elevation = kPi / 6.0;
    double azimuth = kPi / 6.0;

    void validate() const;
};

struct TapProfile
{
    std::vector<double> power;
    std::vector<double> delay;
    double alpha = 1.0;

    int taps() const { return static_cast<int>(power.size()); }

    // Powers uniform(0,1) normalized to one, delays evenly spread over 2/(alpha*BW).
    static TapProfile draw(int taps, double alpha, double bandwidth, Rng &rng);
    void validate() const;
};

struct LinkParams
{
    double kappa = 0.0;
    double alpha = 0.1;
    int taps = 18;
    double reference_gain = kReferencePathGain;
    bool direct_link = false;

    void validate() const;
};

struct ChannelSetup
{
    CarrierPlan plan;
    Geometry geometry;
    LinkParams link;

    void validate() const;
};

struct ChannelRealization
{
    CMatrix incident;               // N x M, row n is h_{I,n}
    CMatrix reflective;             // N x M, row n is h_{R,n}
    std::optional<CVector> direct;  // N, present when the direct link is enabled
    std::uint64_t seed = 0;
    double kappa = 0.0;

    int subcarriers() const { return static_cast<int>(incident.rows()); }
    int elements() const { return static_cast<int>(incident.cols()); }
    bool has_direct() const;
};

double path_gain(double distance, double reference_gain = kReferencePathGain);

// Far-field UPA response, row-major grid with ceil(sqrt(M)) rows and the given element spacing.
CVector upa_los_vector(const Geometry &geometry, double spacing, double frequency);

cd nlos_frequency_response(const TapProfile &taps, const CVector &tap_gains, double frequency);

CVector rician_combine(double kappa, const CVector &los, const CVector &nlos);

// One hop (N x M) with path gain, LoS distance phase and NLoS taps.
CMatrix generate_hop(const ChannelSetup &setup, double distance, int elements, Rng &rng);

ChannelRealization generate_channel_set(const ChannelSetup &setup, std::uint64_t seed);
} // namespace bdris
