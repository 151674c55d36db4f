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

#include "bdris/rectenna.hpp"
#include "bdris/types.hpp"

#include <optional>
#include <vector>

namespace bdris
{
struct WaveformOptConfig
{
    double rho = 0.5;
    double tolerance = 1e-5;
    double beta = 1.0;
    int max_iters = 2000;

    void validate() const;
};

struct WaveformResult
{
    CVector weights;
    std::vector<double> idc_trace; // entry 0 is the initial point
    int iterations = 0;
    bool converged = false;
};

// Scaled matched filter: phases conjugate to the channel, amplitudes proportional to |h|^beta.
CVector smf_init(const CVector &h, double transmit_power, double beta);

double dual_lambda(const RVector &g, double transmit_power);

// Amplitude ascent with phases pinned to -arg(h). The optional start replaces the SMF amplitudes.
WaveformResult it_wf(const CVector &h, double transmit_power, const WaveformOptConfig &cfg,
                     const RectifierParams &params, const std::optional<RVector> &start = std::nullopt);

double waveform_power(const CVector &s);
} // namespace bdris
