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

#include "bdris/beamforming.hpp"
#include "bdris/channel_model.hpp"
#include "bdris/rectenna.hpp"
#include "bdris/waveform.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bdris
{
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

struct SystemConfig
{
    ChannelSetup channel;
    double transmit_power = 100.0; // watts
    RectifierParams rectifier;
    BeamformerConfig beamformer;
    WaveformOptConfig waveform;
    int realizations = 20;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    double oversampling = kDefaultOversampling;
    int threads = 1;
    std::vector<int> m_values{4, 8, 16};
    std::vector<int> n_values{1, 2, 4, 8};

    void validate() const;
};

// "paper-wifi" or "desk"; anything else is a ConfigError.
SystemConfig preset(const std::string &name);

// INI file with sections carrier, geometry, channel, power, rectifier, beamformer, waveform, experiment.
// Keys override the given base; unknown sections or keys are ConfigErrors.
SystemConfig load_config(const std::string &path, const SystemConfig &base);
SystemConfig parse_config(const std::string &text, const SystemConfig &base);

// Canonical key = value listing of every field, stable across runs.
std::string describe(const SystemConfig &cfg);
// FNV-1a of describe().
std::uint64_t config_hash(const SystemConfig &cfg);
} // namespace bdris
