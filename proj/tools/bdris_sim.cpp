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
// bdris-sim: seeded experiment runner writing CSV tables.

#include "CLI11.hpp"

#include "bdris/config.hpp"
#include "bdris/errors.hpp"
#include "bdris/experiments.hpp"

#include <iostream>
#include <optional>
#include <string>

namespace
{
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Options
{
    std::string config_path;
    std::string preset = "desk";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> algorithm;
    std::optional<int> realizations;
    std::optional<int> threads;
};

void add_common(CLI::App *cmd, Options &o)
{
    cmd->add_option("--config", o.config_path, "INI file applied on top of the preset")->check(CLI::ExistingFile);
    cmd->add_option("--preset", o.preset, "base parameter set")
        ->check(CLI::IsMember({"paper-wifi", "desk"}))
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--algorithm", o.algorithm, "beamformer")->check(CLI::IsMember({"sdr", "sdp", "sca", "it", "dris"}));
    cmd->add_option("--realizations", o.realizations, "Monte-Carlo realizations per point")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

bdris::SystemConfig resolve(const Options &o)
{
    bdris::SystemConfig cfg = bdris::preset(o.preset);
    if (!o.config_path.empty())
        cfg = bdris::load_config(o.config_path, cfg);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.out)
        cfg.output_dir = *o.out;
    if (o.algorithm)
        cfg.beamformer.kind = bdris::parse_algorithm(*o.algorithm);
    if (o.realizations)
        cfg.realizations = *o.realizations;
    if (o.threads)
        cfg.threads = *o.threads;
    cfg.validate();
    return cfg;
}

std::vector<bdris::Algorithm> selected(const Options &o, const bdris::SystemConfig &cfg)
{
    if (o.algorithm)
        return {cfg.beamformer.kind};
    return {};
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"BD-RIS wireless power transfer simulator"};
    app.require_subcommand(1);
    Options o;
    auto *convergence = app.add_subcommand("run-convergence", "i_dc traces per outer iteration");
    auto *sweep_m = app.add_subcommand("sweep-m", "mean i_dc against the number of elements");
    auto *sweep_n = app.add_subcommand("sweep-n", "mean i_dc against the number of subcarriers");
    auto *waveform = app.add_subcommand("waveform-report", "per-subcarrier gains, PAPR and time signal");
    auto *compare = app.add_subcommand("compare-ris", "BD-RIS against D-RIS under LoS and NLoS channels");
    auto *dr = app.add_subcommand("dr-table", "SDR against SDP eigenvalue dominance");
    for (auto *cmd : {convergence, sweep_m, sweep_n, waveform, compare, dr})
        add_common(cmd, o);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfig;
    }

    bdris::SystemConfig cfg;
    try
    {
        cfg = resolve(o);
    }
    catch (const bdris::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const bdris::DomainError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const bdris::ContractError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try
    {
        bdris::ExperimentOutput out;
        if (convergence->parsed())
            out = bdris::run_convergence(cfg, selected(o, cfg));
        else if (sweep_m->parsed())
            out = bdris::sweep_m(cfg, selected(o, cfg));
        else if (sweep_n->parsed())
            out = bdris::sweep_n(cfg, selected(o, cfg));
        else if (waveform->parsed())
            out = bdris::waveform_report(cfg);
        else if (compare->parsed())
            out = bdris::compare_ris(cfg);
        else
            out = bdris::dr_table(cfg);
        for (const auto &path : bdris::write_outputs(cfg.output_dir, out.files))
            std::cout << path << "\n";
    }
    catch (const bdris::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
