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
#include "bdris/config.hpp"
#include "bdris/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace bdris
{
double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    if (!(watts > 0.0))
        throw DomainError("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts) + 30.0;
}

void SystemConfig::validate() const
{
    try
    {
        channel.plan.validate();
        channel.link.validate();
        rectifier.validate();
        beamformer.validate();
        waveform.validate();
    }
    catch (const std::exception &e)
    {
        throw ConfigError(e.what());
    }
    if (channel.geometry.elements < 1)
        throw ConfigError("geometry.elements must be at least 1");
    if (!(channel.geometry.d_incident > 0.0) || !(channel.geometry.d_reflective > 0.0) ||
        !(channel.geometry.d_direct > 0.0))
        throw ConfigError("geometry distances must be positive");
    if (!(transmit_power > 0.0))
        throw ConfigError("power.transmit_dbm must give a positive power");
    if (realizations < 1)
        throw ConfigError("experiment.realizations must be at least 1");
    if (!(oversampling >= 8.0))
        throw ConfigError("experiment.oversampling must be at least 8");
    if (threads < 1)
        throw ConfigError("experiment.threads must be at least 1");
    if (m_values.empty() || n_values.empty())
        throw ConfigError("experiment sweep lists must not be empty");
    for (int m : m_values)
        if (m < 1)
            throw ConfigError("experiment.m_values entries must be positive");
    for (int n : n_values)
        if (n < 1)
            throw ConfigError("experiment.n_values entries must be positive");
}

SystemConfig preset(const std::string &name)
{
    SystemConfig c;
    c.channel.plan.lowest_frequency = 2.4e9;
    c.channel.plan.bandwidth = 10e6;
    c.channel.link.reference_gain = 1e-4;
    c.channel.link.taps = 18;
    c.channel.link.kappa = 0.0;
    c.channel.link.alpha = 0.1;
    c.channel.geometry.d_incident = 2.0;
    c.channel.geometry.d_reflective = 2.0;
    c.channel.geometry.elevation = kPi / 6.0;
    c.channel.geometry.azimuth = kPi / 6.0;
    c.transmit_power = dbm_to_watts(50.0);
    c.beamformer.sigma0 = 1e-5;
    c.beamformer.trust_radius = 1.0;
    if (name == "paper-wifi")
    {
        c.channel.geometry.elements = 16;
        c.channel.plan.subcarriers = 8;
        c.realizations = 200;
        c.beamformer.randomization_draws = 50000;
        c.beamformer.feasibility_draws = 50000;
        c.m_values = {4, 8, 16, 32};
        c.n_values = {1, 2, 4, 8, 16};
        return c;
    }
    if (name == "desk")
    {
        c.channel.geometry.elements = 16;
        c.channel.plan.subcarriers = 4;
        c.realizations = 20;
        c.beamformer.randomization_draws = 10000;
        c.beamformer.feasibility_draws = 10000;
        c.m_values = {4, 8, 16};
        c.n_values = {1, 2, 4, 8};
        return c;
    }
    throw ConfigError("unknown preset '" + name + "' (expected paper-wifi or desk)");
}

namespace
{
using boost::property_tree::ptree;

double parse_double(const std::string &key, const std::string &value)
{
    if (value == "inf" || value == "+inf" || value == "infinity")
        return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double out = 0.0;
    try
    {
        out = std::stod(value, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != value.size())
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    return out;
}

long long parse_integer(const std::string &key, const std::string &value)
{
    std::size_t used = 0;
    long long out = 0;
    try
    {
        out = std::stoll(value, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != value.size())
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return out;
}

int parse_int(const std::string &key, const std::string &value)
{
    const long long v = parse_integer(key, value);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(key + ": out of range");
    return static_cast<int>(v);
}

bool parse_bool(const std::string &key, const std::string &value)
{
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<int> parse_list(const std::string &key, const std::string &value)
{
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw ConfigError(key + ": empty list entry");
        out.push_back(parse_int(key, item.substr(first, last - first + 1)));
    }
    if (out.empty())
        throw ConfigError(key + ": empty list");
    return out;
}

using Setter = std::function<void(SystemConfig &, const std::string &, const std::string &)>;

std::map<std::string, Setter> setters()
{
    std::map<std::string, Setter> s;
    s["carrier.lowest_frequency"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.plan.lowest_frequency = parse_double(k, v);
    };
    s["carrier.subcarriers"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.plan.subcarriers = parse_int(k, v);
    };
    s["carrier.bandwidth"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.plan.bandwidth = parse_double(k, v);
    };
    s["geometry.elements"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.geometry.elements = parse_int(k, v);
    };
    s["geometry.d_incident"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.geometry.d_incident = parse_double(k, v);
    };
    s["geometry.d_reflective"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.geometry.d_reflective = parse_double(k, v);
    };
    s["geometry.d_direct"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.geometry.d_direct = parse_double(k, v);
    };
    s["geometry.elevation"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.geometry.elevation = parse_double(k, v);
    };
    s["geometry.azimuth"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.geometry.azimuth = parse_double(k, v);
    };
    s["channel.kappa"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.link.kappa = parse_double(k, v);
    };
    s["channel.alpha"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.link.alpha = parse_double(k, v);
    };
    s["channel.taps"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.link.taps = parse_int(k, v);
    };
    s["channel.reference_gain"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.link.reference_gain = parse_double(k, v);
    };
    s["channel.direct_link"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.channel.link.direct_link = parse_bool(k, v);
    };
    s["power.transmit_dbm"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.transmit_power = dbm_to_watts(parse_double(k, v));
    };
    s["rectifier.k2"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.rectifier.k2 = parse_double(k, v);
    };
    s["rectifier.k4"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.rectifier.k4 = parse_double(k, v);
    };
    s["beamformer.algorithm"] = [](SystemConfig &c, const std::string &, const std::string &v) {
        try
        {
            c.beamformer.kind = parse_algorithm(v);
        }
        catch (const DomainError &e)
        {
            throw ConfigError(e.what());
        }
    };
    s["beamformer.tolerance"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.tolerance = parse_double(k, v);
    };
    s["beamformer.gamma"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.gamma = parse_double(k, v);
    };
    s["beamformer.step_control"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.step_control = parse_double(k, v);
    };
    s["beamformer.sigma0"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.sigma0 = parse_double(k, v);
    };
    s["beamformer.trust_radius"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.trust_radius = parse_double(k, v);
    };
    s["beamformer.randomization_draws"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.randomization_draws = parse_int(k, v);
    };
    s["beamformer.feasibility_draws"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.feasibility_draws = parse_int(k, v);
    };
    s["beamformer.max_outer"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.max_outer = parse_int(k, v);
    };
    s["beamformer.max_inner"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.max_inner = parse_int(k, v);
    };
    s["beamformer.max_inner_it"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.max_inner_it = parse_int(k, v);
    };
    s["beamformer.rank_penalty"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.rank_penalty = parse_double(k, v);
    };
    s["beamformer.dominance_target"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.dominance_target = parse_double(k, v);
    };
    s["beamformer.group_size"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.group_size = parse_int(k, v);
    };
    s["beamformer.sdp_tolerance"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.sdp.tolerance = parse_double(k, v);
    };
    s["beamformer.sdp_max_iterations"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.beamformer.sdp.max_iterations = parse_int(k, v);
    };
    s["waveform.rho"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.waveform.rho = parse_double(k, v);
    };
    s["waveform.tolerance"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.waveform.tolerance = parse_double(k, v);
    };
    s["waveform.beta"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.waveform.beta = parse_double(k, v);
    };
    s["waveform.max_iters"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.waveform.max_iters = parse_int(k, v);
    };
    s["experiment.realizations"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.realizations = parse_int(k, v);
    };
    s["experiment.seed"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        const long long seed = parse_integer(k, v);
        if (seed < 0)
            throw ConfigError(k + ": must be nonnegative");
        c.seed = static_cast<std::uint64_t>(seed);
    };
    s["experiment.output"] = [](SystemConfig &c, const std::string &, const std::string &v) { c.output_dir = v; };
    s["experiment.oversampling"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.oversampling = parse_double(k, v);
    };
    s["experiment.threads"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.threads = parse_int(k, v);
    };
    s["experiment.m_values"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.m_values = parse_list(k, v);
    };
    s["experiment.n_values"] = [](SystemConfig &c, const std::string &k, const std::string &v) {
        c.n_values = parse_list(k, v);
    };
    return s;
}

SystemConfig apply_tree(const ptree &tree, const SystemConfig &base)
{
    static const auto table = setters();
    SystemConfig out = base;
    for (const auto &[section, body] : tree)
    {
        if (body.empty())
            throw ConfigError("key '" + section + "' outside of a section");
        for (const auto &[key, value] : body)
        {
            const std::string full = section + "." + key;
            const auto it = table.find(full);
            if (it == table.end())
                throw ConfigError("unknown configuration key '" + full + "'");
            it->second(out, full, value.data());
        }
    }
    out.validate();
    return out;
}
} // namespace

SystemConfig parse_config(const std::string &text, const SystemConfig &base)
{
    std::istringstream in(text);
    ptree tree;
    try
    {
        boost::property_tree::ini_parser::read_ini(in, tree);
    }
    catch (const boost::property_tree::ini_parser_error &e)
    {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    return apply_tree(tree, base);
}

SystemConfig load_config(const std::string &path, const SystemConfig &base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), base);
}

namespace
{
std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<int> &v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}
} // namespace

std::string describe(const SystemConfig &c)
{
    std::ostringstream o;
    o << "carrier.lowest_frequency=" << num(c.channel.plan.lowest_frequency) << "\n"
      << "carrier.subcarriers=" << c.channel.plan.subcarriers << "\n"
      << "carrier.bandwidth=" << num(c.channel.plan.bandwidth) << "\n"
      << "geometry.elements=" << c.channel.geometry.elements << "\n"
      << "geometry.d_incident=" << num(c.channel.geometry.d_incident) << "\n"
      << "geometry.d_reflective=" << num(c.channel.geometry.d_reflective) << "\n"
      << "geometry.d_direct=" << num(c.channel.geometry.d_direct) << "\n"
      << "geometry.elevation=" << num(c.channel.geometry.elevation) << "\n"
      << "geometry.azimuth=" << num(c.channel.geometry.azimuth) << "\n"
      << "channel.kappa=" << num(c.channel.link.kappa) << "\n"
      << "channel.alpha=" << num(c.channel.link.alpha) << "\n"
      << "channel.taps=" << c.channel.link.taps << "\n"
      << "channel.reference_gain=" << num(c.channel.link.reference_gain) << "\n"
      << "channel.direct_link=" << (c.channel.link.direct_link ? "true" : "false") << "\n"
      << "power.transmit_watts=" << num(c.transmit_power) << "\n"
      << "rectifier.k2=" << num(c.rectifier.k2) << "\n"
      << "rectifier.k4=" << num(c.rectifier.k4) << "\n"
      << "beamformer.algorithm=" << to_string(c.beamformer.kind) << "\n"
      << "beamformer.tolerance=" << num(c.beamformer.tolerance) << "\n"
      << "beamformer.gamma=" << num(c.beamformer.gamma) << "\n"
      << "beamformer.step_control=" << num(c.beamformer.step_control) << "\n"
      << "beamformer.sigma0=" << num(c.beamformer.sigma0) << "\n"
      << "beamformer.trust_radius=" << num(c.beamformer.trust_radius) << "\n"
      << "beamformer.randomization_draws=" << c.beamformer.randomization_draws << "\n"
      << "beamformer.feasibility_draws=" << c.beamformer.feasibility_draws << "\n"
      << "beamformer.max_outer=" << c.beamformer.max_outer << "\n"
      << "beamformer.max_inner=" << c.beamformer.max_inner << "\n"
      << "beamformer.max_inner_it=" << c.beamformer.max_inner_it << "\n"
      << "beamformer.rank_penalty=" << num(c.beamformer.rank_penalty) << "\n"
      << "beamformer.dominance_target=" << num(c.beamformer.dominance_target) << "\n"
      << "beamformer.group_size=" << c.beamformer.group_size << "\n"
      << "beamformer.seed=" << c.beamformer.seed << "\n"
      << "beamformer.sdp_tolerance=" << num(c.beamformer.sdp.tolerance) << "\n"
      << "beamformer.sdp_max_iterations=" << c.beamformer.sdp.max_iterations << "\n"
      << "waveform.rho=" << num(c.waveform.rho) << "\n"
      << "waveform.tolerance=" << num(c.waveform.tolerance) << "\n"
      << "waveform.beta=" << num(c.waveform.beta) << "\n"
      << "waveform.max_iters=" << c.waveform.max_iters << "\n"
      << "experiment.realizations=" << c.realizations << "\n"
      << "experiment.seed=" << c.seed << "\n"
      << "experiment.oversampling=" << num(c.oversampling) << "\n"
      << "experiment.m_values=" << join(c.m_values) << "\n"
      << "experiment.n_values=" << join(c.n_values) << "\n";
    return o.str();
}

std::uint64_t config_hash(const SystemConfig &cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : describe(cfg))
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}
} // namespace bdris
