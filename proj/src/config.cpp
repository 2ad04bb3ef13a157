// SPDX-License-Identifier: Apache-2.0
//
// crcoex - downlink multi-beam cognitive radio coexistence simulator
// Copyright (C) 2026 crcoex contributors
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
// ------------------------------------------------------------------------

#include "crcoex/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace crcoex
{

double ExperimentConfig::theta_linear() const { return std::pow(10.0, theta_db / 10.0); }
double ExperimentConfig::target_min_snr_linear() const
{
    return std::pow(10.0, target_min_snr_db / 10.0);
}

namespace
{

std::string trim(const std::string &s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_d(const std::string &value, long line, const std::string &key)
{
    std::size_t pos = 0;
    double out = 0.0;
    try
    {
        out = std::stod(value, &pos);
    }
    catch (const std::exception &)
    {
        throw ParseError("bad number for " + key + ": '" + value + "'", line);
    }
    if (pos != value.size() || !std::isfinite(out))
        throw ParseError("bad number for " + key + ": '" + value + "'", line);
    return out;
}

long long parse_i(const std::string &value, long line, const std::string &key)
{
    std::size_t pos = 0;
    long long out = 0;
    try
    {
        out = std::stoll(value, &pos);
    }
    catch (const std::exception &)
    {
        throw ParseError("bad integer for " + key + ": '" + value + "'", line);
    }
    if (pos != value.size())
        throw ParseError("bad integer for " + key + ": '" + value + "'", line);
    return out;
}

std::uint64_t parse_u64(const std::string &value, long line, const std::string &key)
{
    std::size_t pos = 0;
    unsigned long long out = 0;
    try
    {
        out = std::stoull(value, &pos);
    }
    catch (const std::exception &)
    {
        throw ParseError("bad unsigned integer for " + key + ": '" + value + "'", line);
    }
    if (pos != value.size())
        throw ParseError("bad unsigned integer for " + key + ": '" + value + "'", line);
    return out;
}

bool parse_b(const std::string &value, long line, const std::string &key)
{
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw ParseError("bad boolean for " + key + " (use true/false): '" + value + "'", line);
}

std::vector<double> parse_d_list(const std::string &value, long line, const std::string &key)
{
    std::vector<double> out;
    std::istringstream ss(value);
    std::string tok;
    while (ss >> tok)
        out.push_back(parse_d(tok, line, key));
    return out;
}

std::vector<int> parse_i_list(const std::string &value, long line, const std::string &key)
{
    std::vector<int> out;
    std::istringstream ss(value);
    std::string tok;
    while (ss >> tok)
        out.push_back(int(parse_i(tok, line, key)));
    return out;
}

std::array<double, 2> parse_pair(const std::string &value, long line, const std::string &key)
{
    const auto v = parse_d_list(value, line, key);
    if (v.size() != 2)
        throw ParseError(key + " needs exactly 2 numbers", line);
    return {v[0], v[1]};
}

std::array<double, 4> parse_quad(const std::string &value, long line, const std::string &key)
{
    const auto v = parse_d_list(value, line, key);
    if (v.size() != 4)
        throw ParseError(key + " needs exactly 4 numbers (x0 x1 y0 y1)", line);
    return {v[0], v[1], v[2], v[3]};
}

} // namespace

ExperimentConfig parse_config(std::istream &is)
{
    ExperimentConfig cfg;
    std::string section;
    std::string line;
    long line_no = 0;

    while (std::getline(is, line))
    {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ParseError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "constraint" && section != "sweep" &&
                section != "output")
                throw ParseError("unknown section [" + section + "]", line_no);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("empty key", line_no);
        if (section.empty())
            throw ParseError("key '" + key + "' before any section", line_no);
        const std::string path = "[" + section + "]." + key;

        if (section == "scenario")
        {
            if (key == "source")
                cfg.source = value;
            else if (key == "mpc_file")
                cfg.mpc_file = value;
            else if (key == "gen_seed")
                cfg.gen_seed = parse_u64(value, line_no, path);
            else if (key == "pbs_beams")
                cfg.synth.pbs_beams = int(parse_i(value, line_no, path));
            else if (key == "sbs_beams")
                cfg.synth.sbs_beams = int(parse_i(value, line_no, path));
            else if (key == "pbs_steer_angles")
                cfg.synth.pbs_steer_angles = parse_d_list(value, line_no, path);
            else if (key == "sbs_steer_angles")
                cfg.synth.sbs_steer_angles = parse_d_list(value, line_no, path);
            else if (key == "carrier_hz")
                cfg.synth.carrier_hz = parse_d(value, line_no, path);
            else if (key == "bandwidth_hz")
                cfg.synth.bandwidth_hz = parse_d(value, line_no, path);
            else if (key == "freq_count")
                cfg.synth.freq_count = int(parse_i(value, line_no, path));
            else if (key == "noise_power_mw")
                cfg.synth.noise_power_mw = parse_d(value, line_no, path);
            else if (key == "pbs_pos")
                cfg.synth.pbs_pos = parse_pair(value, line_no, path);
            else if (key == "sbs_pos")
                cfg.synth.sbs_pos = parse_pair(value, line_no, path);
            else if (key == "ue_region")
                cfg.synth.ue_region = parse_quad(value, line_no, path);
            else if (key == "num_ues")
                cfg.synth.num_ues = int(parse_i(value, line_no, path));
            else if (key == "min_distance")
                cfg.synth.min_distance = parse_d(value, line_no, path);
            else if (key == "pathloss_exp")
                cfg.synth.pathloss_exp = parse_d(value, line_no, path);
            else if (key == "scatter_mean")
                cfg.synth.scatter_mean = parse_d(value, line_no, path);
            else if (key == "scatter_max")
                cfg.synth.scatter_max = int(parse_i(value, line_no, path));
            else if (key == "delay_spread_s")
                cfg.synth.delay_spread_s = parse_d(value, line_no, path);
            else if (key == "angle_spread_rad")
                cfg.synth.angle_spread_rad = parse_d(value, line_no, path);
            else if (key == "scatter_rel_pow")
                cfg.synth.scatter_rel_pow = parse_d(value, line_no, path);
            else if (key == "bs_scatter_mean")
                cfg.synth.bs_scatter_mean = parse_d(value, line_no, path);
            else if (key == "bs_scatter_max")
                cfg.synth.bs_scatter_max = int(parse_i(value, line_no, path));
            else if (key == "bs_angle_spread_rad")
                cfg.synth.bs_angle_spread_rad = parse_d(value, line_no, path);
            else if (key == "bs_scatter_rel_pow")
                cfg.synth.bs_scatter_rel_pow = parse_d(value, line_no, path);
            else if (key == "target_min_snr_db")
                cfg.target_min_snr_db = parse_d(value, line_no, path);
            else
                throw ParseError("unknown key " + path, line_no);
        }
        else if (section == "constraint")
        {
            if (key == "theta_db")
                cfg.theta_db = parse_d(value, line_no, path);
            else if (key == "violation_cap")
                cfg.violation_cap = parse_d(value, line_no, path);
            else if (key == "exclude_baseline_violators")
                cfg.exclude_baseline_violators = parse_b(value, line_no, path);
            else
                throw ParseError("unknown key " + path, line_no);
        }
        else if (section == "sweep")
        {
            if (key == "methods")
            {
                cfg.methods.clear();
                std::istringstream ss(value);
                std::string tok;
                while (ss >> tok)
                {
                    const auto m = method_from_string(tok);
                    if (!m)
                        throw ParseError("unknown method '" + tok + "'", line_no);
                    cfg.methods.push_back(*m);
                }
            }
            else if (key == "n_samples")
                cfg.n_samples = parse_i_list(value, line_no, path);
            else if (key == "ratios_db")
                cfg.ratios_db = parse_d_list(value, line_no, path);
            else if (key == "intervals")
                cfg.intervals = long(parse_i(value, line_no, path));
            else if (key == "p_on")
                cfg.p_on = parse_d(value, line_no, path);
            else if (key == "master_seed")
                cfg.master_seed = parse_u64(value, line_no, path);
            else if (key == "signature_mode")
                cfg.signature_mode = value;
            else if (key == "signature_frames")
                cfg.signature_frames = int(parse_i(value, line_no, path));
            else if (key == "signature_frame_samples")
                cfg.signature_frame_samples = int(parse_i(value, line_no, path));
            else if (key == "sensing_sample_capacity")
                cfg.sensing_sample_capacity = parse_d(value, line_no, path);
            else
                throw ParseError("unknown key " + path, line_no);
        }
        else // output
        {
            if (key == "csv")
                cfg.csv_path = value;
            else
                throw ParseError("unknown key " + path, line_no);
        }
    }

    // Cross-field validation.
    if (cfg.source != "synthetic" && cfg.source != "import")
        throw ConfigError("source must be 'synthetic' or 'import'");
    if (cfg.source == "import" && cfg.mpc_file.empty())
        throw ConfigError("source = import requires mpc_file");
    if (cfg.signature_mode != "exact" && cfg.signature_mode != "learned")
        throw ConfigError("signature_mode must be 'exact' or 'learned'");
    if (cfg.methods.empty() || cfg.n_samples.empty() || cfg.ratios_db.empty())
        throw ConfigError("sweep axes (methods, n_samples, ratios_db) must be nonempty");
    for (const int n : cfg.n_samples)
        if (n < 1)
            throw ConfigError("n_samples entries must be >= 1");
    if (cfg.intervals < 1)
        throw ConfigError("intervals must be >= 1");
    if (!(cfg.p_on >= 0.0) || !(cfg.p_on <= 1.0))
        throw ConfigError("p_on must lie in [0, 1]");
    if (!(cfg.violation_cap >= 0.0) || !(cfg.violation_cap <= 1.0))
        throw ConfigError("violation_cap must lie in [0, 1]");
    if (cfg.signature_frames < 1 || cfg.signature_frame_samples < 1)
        throw ConfigError("signature learning parameters must be >= 1");
    if (cfg.sensing_sample_capacity < 0.0)
        throw ConfigError("sensing_sample_capacity must be >= 0");
    if (cfg.sensing_sample_capacity > 0.0)
        for (const int n : cfg.n_samples)
            if (double(n) > cfg.sensing_sample_capacity)
                throw ConfigError("n_samples exceed sensing_sample_capacity");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(is);
}

namespace
{

std::string fmt_d(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_d(const std::vector<double> &v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? " " : "") + fmt_d(v[i]);
    return out;
}

std::string join_i(const std::vector<int> &v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? " " : "") + std::to_string(v[i]);
    return out;
}

} // namespace

std::string canonical_config(const ExperimentConfig &c)
{
    std::ostringstream os;
    os << "# crcoex experiment configuration (canonical form)\n";
    os << "[scenario]\n";
    os << "source = " << c.source << "\n";
    os << "mpc_file = " << c.mpc_file << "\n";
    os << "gen_seed = " << c.gen_seed << "\n";
    os << "pbs_beams = " << c.synth.pbs_beams << "\n";
    os << "sbs_beams = " << c.synth.sbs_beams << "\n";
    os << "pbs_steer_angles = " << join_d(c.synth.pbs_steer_angles) << "\n";
    os << "sbs_steer_angles = " << join_d(c.synth.sbs_steer_angles) << "\n";
    os << "carrier_hz = " << fmt_d(c.synth.carrier_hz) << "\n";
    os << "bandwidth_hz = " << fmt_d(c.synth.bandwidth_hz) << "\n";
    os << "freq_count = " << c.synth.freq_count << "\n";
    os << "noise_power_mw = " << fmt_d(c.synth.noise_power_mw) << "\n";
    os << "pbs_pos = " << fmt_d(c.synth.pbs_pos[0]) << " " << fmt_d(c.synth.pbs_pos[1]) << "\n";
    os << "sbs_pos = " << fmt_d(c.synth.sbs_pos[0]) << " " << fmt_d(c.synth.sbs_pos[1]) << "\n";
    os << "ue_region = " << fmt_d(c.synth.ue_region[0]) << " " << fmt_d(c.synth.ue_region[1])
       << " " << fmt_d(c.synth.ue_region[2]) << " " << fmt_d(c.synth.ue_region[3]) << "\n";
    os << "num_ues = " << c.synth.num_ues << "\n";
    os << "min_distance = " << fmt_d(c.synth.min_distance) << "\n";
    os << "pathloss_exp = " << fmt_d(c.synth.pathloss_exp) << "\n";
    os << "scatter_mean = " << fmt_d(c.synth.scatter_mean) << "\n";
    os << "scatter_max = " << c.synth.scatter_max << "\n";
    os << "delay_spread_s = " << fmt_d(c.synth.delay_spread_s) << "\n";
    os << "angle_spread_rad = " << fmt_d(c.synth.angle_spread_rad) << "\n";
    os << "scatter_rel_pow = " << fmt_d(c.synth.scatter_rel_pow) << "\n";
    os << "bs_scatter_mean = " << fmt_d(c.synth.bs_scatter_mean) << "\n";
    os << "bs_scatter_max = " << c.synth.bs_scatter_max << "\n";
    os << "bs_angle_spread_rad = " << fmt_d(c.synth.bs_angle_spread_rad) << "\n";
    os << "bs_scatter_rel_pow = " << fmt_d(c.synth.bs_scatter_rel_pow) << "\n";
    os << "target_min_snr_db = " << fmt_d(c.target_min_snr_db) << "\n";
    os << "\n[constraint]\n";
    os << "theta_db = " << fmt_d(c.theta_db) << "\n";
    os << "violation_cap = " << fmt_d(c.violation_cap) << "\n";
    os << "exclude_baseline_violators = " << (c.exclude_baseline_violators ? "true" : "false")
       << "\n";
    os << "\n[sweep]\n";
    os << "methods =";
    for (const auto m : c.methods)
        os << " " << to_string(m);
    os << "\n";
    os << "n_samples = " << join_i(c.n_samples) << "\n";
    os << "ratios_db = " << join_d(c.ratios_db) << "\n";
    os << "intervals = " << c.intervals << "\n";
    os << "p_on = " << fmt_d(c.p_on) << "\n";
    os << "master_seed = " << c.master_seed << "\n";
    os << "signature_mode = " << c.signature_mode << "\n";
    os << "signature_frames = " << c.signature_frames << "\n";
    os << "signature_frame_samples = " << c.signature_frame_samples << "\n";
    os << "sensing_sample_capacity = " << fmt_d(c.sensing_sample_capacity) << "\n";
    os << "\n[output]\n";
    os << "csv = " << c.csv_path << "\n";
    return os.str();
}

} // namespace crcoex
