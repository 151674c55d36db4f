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
#include "bdris/config.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bdris
{
inline constexpr int kCsvSchemaVersion = 1;

// %.9g
std::string format_number(double v);

class CsvTable
{
  public:
    CsvTable(std::string name, std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    const std::string &name() const { return name_; }
    std::size_t rows() const { return rows_.size(); }
    // Comment lines (schema, config hash, seed) then the column row and data.
    std::string render(const SystemConfig &cfg) const;

  private:
    std::string name_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

struct CsvFile
{
    std::string name;
    std::string content;
};

struct RealizationRecord
{
    Algorithm kind = Algorithm::sdr;
    int elements = 0;
    int subcarriers = 0;
    double kappa = 0.0;
    int realization = 0;
    std::uint64_t seed = 0;
    double idc = 0.0;
    double raw_idc = 0.0;
    int outer_iterations = 0;
    int inner_iterations = 0;
    std::optional<double> dominance;
    double unitarity_residual = 0.0;
    double symmetry_residual = 0.0;
    std::vector<double> idc_trace;
    std::vector<int> inner_counts;
    CMatrix theta;
};

struct ExperimentOutput
{
    std::vector<CsvFile> files;
    std::vector<RealizationRecord> records;
};

struct Aggregate
{
    double mean = 0.0;
    double stddev = 0.0; // sample, zero for one value
    int count = 0;
};

Aggregate aggregate(const std::vector<double> &values);

// Runs task(0..count-1) on up to threads workers; results keep index order.
void parallel_for(int count, int threads, const std::function<void(int)> &task);

std::uint64_t realization_seed(std::uint64_t master, int realization);

RealizationRecord run_realization(const SystemConfig &cfg, const ChannelSetup &setup, Algorithm kind,
                                  int realization, std::uint64_t seed);

// Algorithms default to sdr, sdp, sca and it when the list is empty.
ExperimentOutput run_convergence(const SystemConfig &cfg, std::vector<Algorithm> algorithms = {});
ExperimentOutput sweep_m(const SystemConfig &cfg, std::vector<Algorithm> algorithms = {});
ExperimentOutput sweep_n(const SystemConfig &cfg, std::vector<Algorithm> algorithms = {});

struct WaveformCell
{
    double transmit_dbm = 0.0;
    double alpha = 0.0;
    RVector incident_gain;  // per subcarrier, normalized to the maximum
    RVector reflective_gain;
    RVector cascade_gain;
    RVector weight_gain;
    RVector power_fraction; // |s_n|^2 / (2 P_T)
    double idc = 0.0;
    double papr_db = 0.0;
    std::vector<double> time_signal;
    OptimizerReport report;
};

inline constexpr int kWaveformSubcarriers = 8;

// One pinned realization with kappa = 0 and N = kWaveformSubcarriers.
WaveformCell waveform_cell(const SystemConfig &cfg, double transmit_dbm, double alpha);
ExperimentOutput waveform_report(const SystemConfig &cfg);

// LoS uses the closed-form D-RIS, NLoS the diagonal relaxation; BD-RIS runs the configured kind.
ExperimentOutput compare_ris(const SystemConfig &cfg);

inline const std::vector<std::pair<int, int>> kDominanceSetups{{4, 8}, {8, 4}, {8, 8}, {12, 8}};
inline constexpr int kDominanceRealizations = 5;

ExperimentOutput dr_table(const SystemConfig &cfg, const std::vector<std::pair<int, int>> &setups = kDominanceSetups,
                          int realizations = kDominanceRealizations);

// Creates the directory if needed; returns the written paths.
std::vector<std::string> write_outputs(const std::string &dir, const std::vector<CsvFile> &files);
} // namespace bdris
