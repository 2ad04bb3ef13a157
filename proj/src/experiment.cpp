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

#include "crcoex/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "crcoex/mpc_io.hpp"

namespace crcoex
{

Scenario build_scenario(const ExperimentConfig &config)
{
    Scenario scenario;
    if (config.source == "synthetic")
    {
        GenParams params = config.synth;
        params.sinr_threshold = config.theta_linear();
        params.violation_cap = config.violation_cap;
        params.pbs_power_mw = 1.0; // placeholder until calibration
        params.sbs_power_mw = 0.0;
        scenario = generate_synthetic_scenario(params, config.gen_seed);
    }
    else
    {
        MpcFileContent content = import_mpcs_file(config.mpc_file);
        scenario.pbs_cfg = config.synth.pbs_steer_angles.empty()
                               ? BeamConfig::fourier(config.synth.pbs_beams)
                               : BeamConfig{config.synth.pbs_beams, config.synth.pbs_steer_angles};
        scenario.sbs_cfg = config.synth.sbs_steer_angles.empty()
                               ? BeamConfig::fourier(config.synth.sbs_beams)
                               : BeamConfig{config.synth.sbs_beams, config.synth.sbs_steer_angles};
        scenario.grid = FrequencyGrid::centered(config.synth.carrier_hz,
                                                config.synth.bandwidth_hz,
                                                config.synth.freq_count);
        scenario.pbs_to_sbs_mpcs = std::move(content.pbs_to_sbs);
        scenario.pbs_to_ue_mpcs = std::move(content.pbs_to_ue);
        scenario.sbs_to_ue_mpcs = std::move(content.sbs_to_ue);
        // Positions are not part of the MPC format; everything downstream
        // works from the MPCs alone.
        scenario.ue_positions.assign(scenario.pbs_to_ue_mpcs.size(), {0.0, 0.0});
        scenario.noise_power = config.synth.noise_power_mw;
        scenario.pbs_power = 1.0;
        scenario.sbs_power = 0.0;
        scenario.sinr_threshold = config.theta_linear();
        scenario.violation_cap = config.violation_cap;
        scenario.validate();
    }

    const Association assoc = associate_ues(scenario);
    scenario.pbs_power =
        calibrate_pbs_power(scenario, assoc, config.target_min_snr_linear());
    return scenario;
}

ResultTable run_experiment(const ExperimentConfig &config, int threads)
{
    const Scenario base = build_scenario(config);
    const ScenarioAssets assets =
        config.signature_mode == "exact"
            ? ScenarioAssets::build_exact(base)
            : ScenarioAssets::build_learned(base, config.signature_frames,
                                            config.signature_frame_samples,
                                            substream_seed(config.master_seed, 0x5167));

    ResultTable table;
    table.calibrated_pbs_power_mw = base.pbs_power;
    table.num_ues = base.num_ues();
    table.master_seed = config.master_seed;
    table.baseline_violator_count =
        long(baseline_violators(assets.tables, base, config.theta_linear()).size());

    ConstraintSpec spec;
    spec.theta = config.theta_linear();
    spec.cap = config.violation_cap;
    spec.exclude_baseline_violators = config.exclude_baseline_violators;

    for (const Method method : config.methods)
    {
        for (std::size_t ni = 0; ni < config.n_samples.size(); ++ni)
        {
            for (std::size_t ri = 0; ri < config.ratios_db.size(); ++ri)
            {
                Scenario cell_scenario = base;
                cell_scenario.sbs_power =
                    std::pow(10.0, config.ratios_db[ri] / 10.0) * base.pbs_power;
                const SimContext ctx(cell_scenario, assets, spec);

                RunOptions options;
                options.method = method;
                options.num_samples = config.n_samples[ni];
                options.intervals = config.intervals;
                // Methods share cell seeds: comparisons are paired.
                options.seed = substream_seed(config.master_seed, ni, ri);
                options.p_on = config.p_on;
                options.threads = threads;

                ResultRow row;
                row.method = method;
                row.num_samples = options.num_samples;
                row.ratio_db = config.ratios_db[ri];
                row.cell_seed = options.seed;
                row.report = run_monte_carlo(ctx, options);
                if (config.sensing_sample_capacity > 0.0)
                    row.report.throughput *=
                        1.0 - double(options.num_samples) / config.sensing_sample_capacity;
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

namespace
{

std::string fmt_metric(const std::optional<double> &value)
{
    if (!value)
        return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", *value);
    return buf;
}

std::string fmt_num(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

} // namespace

void write_csv(const ResultTable &table, std::ostream &os)
{
    os << "method,N,ratio_db,pmo,pci,throughput,detector_err,stderr_pmo,stderr_pci,"
          "stderr_thru,seed\n";
    for (const auto &row : table.rows)
    {
        os << to_string(row.method) << "," << row.num_samples << "," << fmt_num(row.ratio_db)
           << "," << fmt_metric(row.report.pmo) << "," << fmt_metric(row.report.pci) << ","
           << fmt_num(row.report.throughput) << "," << fmt_num(row.report.detector_error_rate)
           << "," << fmt_metric(row.report.stderr_pmo) << ","
           << fmt_metric(row.report.stderr_pci) << "," << fmt_num(row.report.stderr_thru) << ","
           << row.cell_seed << "\n";
    }
}

std::string summarize(const ResultTable &table)
{
    std::ostringstream os;
    os << "cells: " << table.rows.size() << ", UEs: " << table.num_ues
       << ", calibrated PBS power: " << fmt_num(table.calibrated_pbs_power_mw)
       << " mW, baseline-violating UEs excluded from protection: "
       << table.baseline_violator_count << "\n";
    if (table.rows.empty())
        return os.str();

    // Per-method extrema across the sweep axes.
    for (const Method method : {Method::proposed, Method::mdba, Method::bdba})
    {
        const ResultRow *best_thru = nullptr;
        const ResultRow *worst_pmo = nullptr;
        const ResultRow *worst_pci = nullptr;
        for (const auto &row : table.rows)
        {
            if (row.method != method)
                continue;
            if (!best_thru || row.report.throughput > best_thru->report.throughput)
                best_thru = &row;
            if (row.report.pmo && (!worst_pmo || *row.report.pmo > *worst_pmo->report.pmo))
                worst_pmo = &row;
            if (row.report.pci && (!worst_pci || *row.report.pci > *worst_pci->report.pci))
                worst_pci = &row;
        }
        if (!best_thru)
            continue;
        os << to_string(method) << ": max throughput " << fmt_num(best_thru->report.throughput)
           << " at N=" << best_thru->num_samples << ", ratio=" << fmt_num(best_thru->ratio_db)
           << " dB";
        if (worst_pmo)
            os << "; worst pmo " << fmt_metric(worst_pmo->report.pmo)
               << " at N=" << worst_pmo->num_samples << ", ratio="
               << fmt_num(worst_pmo->ratio_db) << " dB";
        if (worst_pci)
            os << "; worst pci " << fmt_metric(worst_pci->report.pci)
               << " at N=" << worst_pci->num_samples << ", ratio="
               << fmt_num(worst_pci->ratio_db) << " dB";
        os << "\n";
    }

    const ResultRow *best = nullptr;
    for (const auto &row : table.rows)
        if (!best || row.report.throughput > best->report.throughput)
            best = &row;
    os << "throughput-maximizing ratio: " << fmt_num(best->ratio_db) << " dB ("
       << to_string(best->method) << ", N=" << best->num_samples << ", throughput "
       << fmt_num(best->report.throughput) << ")\n";
    return os.str();
}

std::string emit_report(const ResultTable &table, const std::string &path)
{
    if (table.rows.empty())
        throw ConfigError("result table is empty");
    std::ofstream os(path);
    if (!os)
        throw ConfigError("cannot write CSV to '" + path + "'");
    write_csv(table, os);
    os.flush();
    if (!os.good())
        throw ConfigError("I/O error while writing '" + path + "'");
    return summarize(table);
}

} // namespace crcoex
