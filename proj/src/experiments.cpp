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
#include "bdris/experiments.hpp"
#include "bdris/errors.hpp"
#include "bdris/rectenna.hpp"
#include "bdris/ris_core.hpp"
#include "bdris/rng.hpp"
#include "bdris/waveform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace bdris
{
std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

CsvTable::CsvTable(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns))
{
}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size())
        throw ContractError("CsvTable::add_row: " + std::to_string(cells.size()) + " cells for " +
                            std::to_string(columns_.size()) + " columns in " + name_);
    rows_.push_back(std::move(cells));
}

std::string CsvTable::render(const SystemConfig &cfg) const
{
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    std::ostringstream o;
    o << "# schema_version=" << kCsvSchemaVersion << "\n"
      << "# table=" << name_ << "\n"
      << "# config_hash=" << hash << "\n"
      << "# seed=" << cfg.seed << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
        o << (i ? "," : "") << columns_[i];
    o << "\n";
    for (const auto &row : rows_)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            o << (i ? "," : "") << row[i];
        o << "\n";
    }
    return o.str();
}

Aggregate aggregate(const std::vector<double> &values)
{
    Aggregate a;
    a.count = static_cast<int>(values.size());
    if (values.empty())
        return a;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    a.mean = sum / a.count;
    if (a.count > 1)
    {
        double ss = 0.0;
        for (double v : values)
            ss += (v - a.mean) * (v - a.mean);
        a.stddev = std::sqrt(ss / (a.count - 1));
    }
    return a;
}

void parallel_for(int count, int threads, const std::function<void(int)> &task)
{
    if (count <= 0)
        return;
    const int workers = std::max(1, std::min(threads, count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < count; i = next++)
        {
            try
            {
                task(i);
            }
            catch (...)
            {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    if (workers == 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    // lowest index wins so failures are reproducible too
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

std::uint64_t realization_seed(std::uint64_t master, int realization)
{
    return derive_seed(master, Stream::experiment, static_cast<std::uint64_t>(realization));
}

RealizationRecord run_realization(const SystemConfig &cfg, const ChannelSetup &setup, Algorithm kind,
                                  int realization, std::uint64_t seed)
{
    const ChannelRealization ch = generate_channel_set(setup, seed);
    BeamformerConfig bf = cfg.beamformer;
    bf.kind = kind;
    bf.seed = seed;
    const OptimizerReport rep = ch.has_direct()
                                    ? with_direct_link(ch, cfg.transmit_power, bf, cfg.waveform, cfg.rectifier)
                                    : alternating_optimize(ch, cfg.transmit_power, bf, cfg.waveform, cfg.rectifier);
    RealizationRecord r;
    r.kind = kind;
    r.elements = setup.geometry.elements;
    r.subcarriers = setup.plan.subcarriers;
    r.kappa = setup.link.kappa;
    r.realization = realization;
    r.seed = seed;
    r.idc = rep.idc;
    r.raw_idc = rep.raw_idc;
    r.outer_iterations = rep.outer_iterations;
    for (int c : rep.inner_counts)
        r.inner_iterations += c;
    r.dominance = rep.dominance;
    r.unitarity_residual = rep.unitarity_residual;
    r.symmetry_residual = rep.symmetry_residual;
    r.idc_trace = rep.idc_trace;
    r.inner_counts = rep.inner_counts;
    r.theta = rep.theta;
    return r;
}

namespace
{
std::vector<Algorithm> or_default(std::vector<Algorithm> algorithms)
{
    if (algorithms.empty())
        return {Algorithm::sdr, Algorithm::sdp, Algorithm::sca, Algorithm::it};
    return algorithms;
}

ChannelSetup with_size(ChannelSetup s, int elements, int subcarriers)
{
    s.geometry.elements = elements;
    s.plan.subcarriers = subcarriers;
    return s;
}

std::string optional_number(const std::optional<double> &v)
{
    return v ? format_number(*v) : "";
}

struct Cell
{
    ChannelSetup setup;
    Algorithm kind;
    std::vector<std::string> prefix; // extra leading columns
};

const std::vector<std::string> kRawColumns{"algorithm",   "M",        "N",       "realization",      "seed",
                                           "idc",         "raw_idc",  "outer_iterations", "inner_iterations",
                                           "dominance"};

std::vector<std::string> raw_cells(const RealizationRecord &r)
{
    return {to_string(r.kind),
            std::to_string(r.elements),
            std::to_string(r.subcarriers),
            std::to_string(r.realization),
            std::to_string(r.seed),
            format_number(r.idc),
            format_number(r.raw_idc),
            std::to_string(r.outer_iterations),
            std::to_string(r.inner_iterations),
            optional_number(r.dominance)};
}

// Every (cell, realization) pair is one task; records come back cell-major.
std::vector<RealizationRecord> run_cells(const SystemConfig &cfg, const std::vector<Cell> &cells, int realizations)
{
    const int total = static_cast<int>(cells.size()) * realizations;
    std::vector<RealizationRecord> out(static_cast<std::size_t>(total));
    parallel_for(total, cfg.threads, [&](int i) {
        const Cell &c = cells[static_cast<std::size_t>(i / realizations)];
        const int r = i % realizations;
        out[static_cast<std::size_t>(i)] = run_realization(cfg, c.setup, c.kind, r, realization_seed(cfg.seed, r));
    });
    return out;
}

ExperimentOutput sweep(const SystemConfig &cfg, std::vector<Algorithm> algorithms, bool over_m,
                       const std::string &name)
{
    cfg.validate();
    algorithms = or_default(std::move(algorithms));
    std::vector<Cell> cells;
    const auto &values = over_m ? cfg.m_values : cfg.n_values;
    for (int v : values)
        for (Algorithm a : algorithms)
        {
            const int m = over_m ? v : cfg.channel.geometry.elements;
            const int n = over_m ? cfg.channel.plan.subcarriers : v;
            cells.push_back({with_size(cfg.channel, m, n), a, {}});
        }
    ExperimentOutput out;
    out.records = run_cells(cfg, cells, cfg.realizations);

    CsvTable raw(name + "_raw", kRawColumns);
    CsvTable agg(name, {"algorithm", "M", "N", "count", "mean_idc", "std_idc"});
    for (std::size_t c = 0; c < cells.size(); ++c)
    {
        std::vector<double> values;
        for (int r = 0; r < cfg.realizations; ++r)
        {
            const auto &rec = out.records[c * static_cast<std::size_t>(cfg.realizations) + static_cast<std::size_t>(r)];
            raw.add_row(raw_cells(rec));
            values.push_back(rec.idc);
        }
        const Aggregate a = aggregate(values);
        agg.add_row({to_string(cells[c].kind), std::to_string(cells[c].setup.geometry.elements),
                     std::to_string(cells[c].setup.plan.subcarriers), std::to_string(a.count),
                     format_number(a.mean), format_number(a.stddev)});
    }
    out.files.push_back({name + ".csv", agg.render(cfg)});
    out.files.push_back({name + "_raw.csv", raw.render(cfg)});
    return out;
}

RVector normalized(const RVector &v)
{
    const double top = v.maxCoeff();
    return top > 0.0 ? RVector(v / top) : v;
}
} // namespace

ExperimentOutput run_convergence(const SystemConfig &cfg, std::vector<Algorithm> algorithms)
{
    cfg.validate();
    algorithms = or_default(std::move(algorithms));
    std::vector<Cell> cells;
    for (Algorithm a : algorithms)
        cells.push_back({cfg.channel, a, {}});
    ExperimentOutput out;
    out.records = run_cells(cfg, cells, 1);

    CsvTable t("convergence", {"algorithm", "M", "N", "outer_iteration", "inner_iterations", "idc"});
    const int m = cfg.channel.geometry.elements;
    const int n = cfg.channel.plan.subcarriers;
    {
        // waveform-only ascent on the start configuration Theta = jI
        const ChannelRealization ch = generate_channel_set(cfg.channel, realization_seed(cfg.seed, 0));
        const CMatrix theta = scattering_from_impedance(kJ * kReferenceImpedance * CMatrix::Identity(m, m));
        const WaveformResult wf = it_wf(cascade_response(ch, theta), cfg.transmit_power, cfg.waveform, cfg.rectifier);
        for (std::size_t k = 0; k < wf.idc_trace.size(); ++k)
            t.add_row({"it-wf", std::to_string(m), std::to_string(n), std::to_string(k), std::to_string(k),
                       format_number(wf.idc_trace[k])});
    }
    for (const auto &rec : out.records)
    {
        int cumulative = 0;
        for (std::size_t k = 0; k < rec.idc_trace.size(); ++k)
        {
            if (k > 0)
                cumulative += rec.inner_counts[k - 1];
            t.add_row({to_string(rec.kind), std::to_string(rec.elements), std::to_string(rec.subcarriers),
                       std::to_string(k), std::to_string(cumulative), format_number(rec.idc_trace[k])});
        }
    }
    out.files.push_back({"convergence.csv", t.render(cfg)});
    return out;
}

ExperimentOutput sweep_m(const SystemConfig &cfg, std::vector<Algorithm> algorithms)
{
    return sweep(cfg, std::move(algorithms), true, "sweep_m");
}

ExperimentOutput sweep_n(const SystemConfig &cfg, std::vector<Algorithm> algorithms)
{
    return sweep(cfg, std::move(algorithms), false, "sweep_n");
}

WaveformCell waveform_cell(const SystemConfig &cfg, double transmit_dbm, double alpha)
{
    cfg.validate();
    ChannelSetup setup = cfg.channel;
    setup.plan.subcarriers = kWaveformSubcarriers;
    setup.link.kappa = 0.0;
    setup.link.alpha = alpha;
    const std::uint64_t seed = realization_seed(cfg.seed, 0);
    const ChannelRealization ch = generate_channel_set(setup, seed);
    const double pt = dbm_to_watts(transmit_dbm);
    BeamformerConfig bf = cfg.beamformer;
    bf.seed = seed;

    WaveformCell c;
    c.transmit_dbm = transmit_dbm;
    c.alpha = alpha;
    c.report = ch.has_direct() ? with_direct_link(ch, pt, bf, cfg.waveform, cfg.rectifier)
                               : alternating_optimize(ch, pt, bf, cfg.waveform, cfg.rectifier);
    const CVector h = cascade_response(ch, c.report.theta);
    const CVector &s = c.report.weights;
    c.incident_gain = normalized(ch.incident.rowwise().norm());
    c.reflective_gain = normalized(ch.reflective.rowwise().norm());
    c.cascade_gain = normalized(h.cwiseAbs());
    c.weight_gain = normalized(s.cwiseAbs());
    c.power_fraction = s.cwiseAbs2() / (2.0 * pt);
    c.idc = c.report.idc;
    c.papr_db = papr_db(s, h, setup.plan, cfg.oversampling);
    c.time_signal = received_signal(s, h, setup.plan, cfg.oversampling);
    return c;
}

ExperimentOutput waveform_report(const SystemConfig &cfg)
{
    cfg.validate();
    const std::vector<double> powers{30.0, 50.0};
    const std::vector<double> alphas{0.1, 1.0, 10.0};
    std::vector<WaveformCell> cells(powers.size() * alphas.size());
    parallel_for(static_cast<int>(cells.size()), cfg.threads, [&](int i) {
        cells[static_cast<std::size_t>(i)] = waveform_cell(cfg, powers[static_cast<std::size_t>(i) / alphas.size()],
                                                           alphas[static_cast<std::size_t>(i) % alphas.size()]);
    });

    ChannelSetup setup = cfg.channel;
    setup.plan.subcarriers = kWaveformSubcarriers;
    CsvTable gains("waveform_gains", {"transmit_dbm", "alpha", "subcarrier", "frequency", "incident_gain",
                                      "reflective_gain", "cascade_gain", "weight_gain", "power_fraction"});
    CsvTable summary("waveform_summary", {"transmit_dbm", "alpha", "idc", "papr_db", "max_power_fraction",
                                          "loaded_subcarriers"});
    CsvTable trace("waveform_time", {"transmit_dbm", "alpha", "sample", "time", "signal"});
    ExperimentOutput out;
    for (const auto &c : cells)
    {
        const std::string p = format_number(c.transmit_dbm);
        const std::string a = format_number(c.alpha);
        int loaded = 0;
        for (int n = 0; n < kWaveformSubcarriers; ++n)
        {
            gains.add_row({p, a, std::to_string(n), format_number(setup.plan.frequency(n)),
                           format_number(c.incident_gain(n)), format_number(c.reflective_gain(n)),
                           format_number(c.cascade_gain(n)), format_number(c.weight_gain(n)),
                           format_number(c.power_fraction(n))});
            if (c.power_fraction(n) >= 1.0 / (4.0 * kWaveformSubcarriers))
                ++loaded;
        }
        summary.add_row({p, a, format_number(c.idc), format_number(c.papr_db),
                         format_number(c.power_fraction.maxCoeff()), std::to_string(loaded)});
        const double dt = 1.0 / (setup.plan.spacing() * static_cast<double>(c.time_signal.size()));
        for (std::size_t k = 0; k < c.time_signal.size(); ++k)
            trace.add_row({p, a, std::to_string(k), format_number(static_cast<double>(k) * dt),
                           format_number(c.time_signal[k])});

        RealizationRecord r;
        r.kind = c.report.kind;
        r.elements = setup.geometry.elements;
        r.subcarriers = kWaveformSubcarriers;
        r.idc = c.idc;
        r.raw_idc = c.report.raw_idc;
        r.seed = realization_seed(cfg.seed, 0);
        r.outer_iterations = c.report.outer_iterations;
        r.dominance = c.report.dominance;
        r.unitarity_residual = c.report.unitarity_residual;
        r.symmetry_residual = c.report.symmetry_residual;
        r.idc_trace = c.report.idc_trace;
        r.inner_counts = c.report.inner_counts;
        r.theta = c.report.theta;
        out.records.push_back(std::move(r));
    }
    out.files.push_back({"waveform_gains.csv", gains.render(cfg)});
    out.files.push_back({"waveform_summary.csv", summary.render(cfg)});
    out.files.push_back({"waveform_time.csv", trace.render(cfg)});
    return out;
}

namespace
{
bool is_diagonal(Algorithm a)
{
    return a == Algorithm::dris_sdr || a == Algorithm::dris_los;
}
} // namespace

ExperimentOutput compare_ris(const SystemConfig &cfg)
{
    cfg.validate();
    const Algorithm bd = is_diagonal(cfg.beamformer.kind) ? Algorithm::sdr : cfg.beamformer.kind;
    std::vector<Cell> cells;
    for (const bool los : {true, false})
    {
        ChannelSetup base = cfg.channel;
        base.link.kappa = los ? kInfiniteKappa : 0.0;
        const std::string channel = los ? "los" : "nlos";
        const Algorithm diag = los ? Algorithm::dris_los : Algorithm::dris_sdr;
        for (int m : cfg.m_values)
            for (const auto &[arch, kind] : {std::pair{"bd-ris", bd}, std::pair{"d-ris", diag}})
                cells.push_back({with_size(base, m, cfg.channel.plan.subcarriers), kind, {channel, "M", arch}});
        for (int n : cfg.n_values)
            for (const auto &[arch, kind] : {std::pair{"bd-ris", bd}, std::pair{"d-ris", diag}})
                cells.push_back({with_size(base, cfg.channel.geometry.elements, n), kind, {channel, "N", arch}});
    }
    ExperimentOutput out;
    out.records = run_cells(cfg, cells, cfg.realizations);

    std::vector<std::string> raw_columns{"channel", "sweep", "architecture"};
    raw_columns.insert(raw_columns.end(), kRawColumns.begin(), kRawColumns.end());
    CsvTable raw("compare_ris_raw", raw_columns);
    CsvTable agg("compare_ris",
                 {"channel", "sweep", "architecture", "algorithm", "M", "N", "count", "mean_idc", "std_idc"});
    for (std::size_t c = 0; c < cells.size(); ++c)
    {
        std::vector<double> values;
        for (int r = 0; r < cfg.realizations; ++r)
        {
            const auto &rec = out.records[c * static_cast<std::size_t>(cfg.realizations) + static_cast<std::size_t>(r)];
            auto row = cells[c].prefix;
            const auto cellsv = raw_cells(rec);
            row.insert(row.end(), cellsv.begin(), cellsv.end());
            raw.add_row(std::move(row));
            values.push_back(rec.idc);
        }
        const Aggregate a = aggregate(values);
        auto row = cells[c].prefix;
        row.insert(row.end(), {to_string(cells[c].kind), std::to_string(cells[c].setup.geometry.elements),
                               std::to_string(cells[c].setup.plan.subcarriers), std::to_string(a.count),
                               format_number(a.mean), format_number(a.stddev)});
        agg.add_row(std::move(row));
    }
    out.files.push_back({"compare_ris.csv", agg.render(cfg)});
    out.files.push_back({"compare_ris_raw.csv", raw.render(cfg)});
    return out;
}

ExperimentOutput dr_table(const SystemConfig &cfg, const std::vector<std::pair<int, int>> &setups, int realizations)
{
    cfg.validate();
    if (realizations < 1)
        throw ConfigError("dr_table: realizations must be at least 1");
    std::vector<Cell> cells;
    ChannelSetup base = cfg.channel;
    base.link.kappa = 0.0;
    for (const auto &[m, n] : setups)
        for (Algorithm a : {Algorithm::sdp, Algorithm::sdr})
            cells.push_back({with_size(base, m, n), a, {}});
    ExperimentOutput out;
    out.records = run_cells(cfg, cells, realizations);

    CsvTable raw("dr_table_raw", kRawColumns);
    CsvTable agg("dr_table", {"algorithm", "M", "N", "count", "mean_idc", "std_idc", "mean_dominance",
                              "min_dominance", "max_dominance"});
    for (std::size_t c = 0; c < cells.size(); ++c)
    {
        std::vector<double> values;
        std::vector<double> dominance;
        for (int r = 0; r < realizations; ++r)
        {
            const auto &rec = out.records[c * static_cast<std::size_t>(realizations) + static_cast<std::size_t>(r)];
            raw.add_row(raw_cells(rec));
            values.push_back(rec.idc);
            if (rec.dominance)
                dominance.push_back(*rec.dominance);
        }
        const Aggregate a = aggregate(values);
        const Aggregate d = aggregate(dominance);
        const bool has = !dominance.empty();
        agg.add_row({to_string(cells[c].kind), std::to_string(cells[c].setup.geometry.elements),
                     std::to_string(cells[c].setup.plan.subcarriers), std::to_string(a.count), format_number(a.mean),
                     format_number(a.stddev), has ? format_number(d.mean) : "",
                     has ? format_number(*std::min_element(dominance.begin(), dominance.end())) : "",
                     has ? format_number(*std::max_element(dominance.begin(), dominance.end())) : ""});
    }
    out.files.push_back({"dr_table.csv", agg.render(cfg)});
    out.files.push_back({"dr_table_raw.csv", raw.render(cfg)});
    return out;
}

std::vector<std::string> write_outputs(const std::string &dir, const std::vector<CsvFile> &files)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
    std::vector<std::string> written;
    for (const auto &f : files)
    {
        const fs::path path = fs::path(dir) / f.name;
        std::ofstream o(path, std::ios::binary);
        o << f.content;
        if (!o)
            throw ConfigError("cannot write '" + path.string() + "'");
        written.push_back(path.string());
    }
    return written;
}
} // namespace bdris
