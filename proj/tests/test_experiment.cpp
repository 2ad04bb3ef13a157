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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "crcoex/experiment.hpp"
#include "crcoex/mpc_io.hpp"

using namespace crcoex;

namespace
{

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.synth.pbs_beams = 3;
    cfg.synth.sbs_beams = 3;
    cfg.synth.freq_count = 4;
    cfg.synth.num_ues = 10;
    cfg.methods = {Method::proposed};
    cfg.n_samples = {4};
    cfg.ratios_db = {-5.0};
    cfg.intervals = 40;
    cfg.master_seed = 3;
    return cfg;
}

std::vector<std::string> split_lines(const std::string &text)
{
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        lines.push_back(line);
    return lines;
}

} // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("single-cell run emits a single CSV data row")
{
    const auto table = run_experiment(small_config(), 2);
    REQUIRE(table.rows.size() == 1);
    std::ostringstream os;
    write_csv(table, os);
    const auto lines = split_lines(os.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "method,N,ratio_db,pmo,pci,throughput,detector_err,stderr_pmo,stderr_pci,"
          "stderr_thru,seed");
    CHECK(lines[1].substr(0, 9) == "proposed,");
}

TEST_CASE("csv numbers reproduce the report fields to 6 significant digits")
{
    const auto table = run_experiment(small_config(), 2);
    std::ostringstream os;
    write_csv(table, os);
    const auto lines = split_lines(os.str());
    std::istringstream row(lines[1]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ','))
        fields.push_back(field);
    REQUIRE(fields.size() == 11);
    const auto &report = table.rows[0].report;
    REQUIRE(report.pmo.has_value());
    CHECK(std::stod(fields[3]) == doctest::Approx(*report.pmo).epsilon(1e-6));
    CHECK(std::stod(fields[5]) == doctest::Approx(report.throughput).epsilon(1e-6));
    CHECK(std::stod(fields[6]) ==
          doctest::Approx(report.detector_error_rate).epsilon(1e-6));
}

TEST_CASE("reruns with the same config are byte-identical")
{
    const auto cfg = small_config();
    const auto a = run_experiment(cfg, 1);
    const auto b = run_experiment(cfg, 2);
    std::ostringstream csv_a, csv_b;
    write_csv(a, csv_a);
    write_csv(b, csv_b);
    CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("undefined metrics become empty CSV fields")
{
    ResultTable table;
    ResultRow row;
    row.method = Method::bdba;
    row.num_samples = 1;
    row.ratio_db = 0.0;
    row.report.pmo = std::nullopt; // undefined
    row.report.pci = 0.25;
    row.report.stderr_pci = 0.01;
    row.report.throughput = 0.5;
    table.rows.push_back(row);
    std::ostringstream os;
    write_csv(table, os);
    const auto lines = split_lines(os.str());
    CHECK(lines[1].find("bdba,1,0,,0.25,0.5,") == 0);
}

TEST_CASE("summary names the throughput-maximizing ratio")
{
    auto cfg = small_config();
    cfg.ratios_db = {-20.0, -5.0};
    const auto table = run_experiment(cfg, 2);
    const std::string summary = summarize(table);
    const ResultRow *best = nullptr;
    for (const auto &row : table.rows)
        if (!best || row.report.throughput > best->report.throughput)
            best = &row;
    char expect[64];
    std::snprintf(expect, sizeof expect, "throughput-maximizing ratio: %.9g dB",
                  best->ratio_db);
    CHECK(summary.find(expect) != std::string::npos);
}

TEST_CASE("emit_report writes the CSV and fails cleanly on bad paths")
{
    const auto table = run_experiment(small_config(), 2);
    const std::string path = "test_report_tmp.csv";
    const std::string summary = emit_report(table, path);
    CHECK_FALSE(summary.empty());
    std::ifstream is(path);
    REQUIRE(bool(is));
    std::string header;
    std::getline(is, header);
    CHECK(header.substr(0, 7) == "method,");
    is.close();
    std::remove(path.c_str());

    CHECK_THROWS_AS((void)emit_report(table, "/nonexistent_dir/x.csv"), ConfigError);
}

TEST_CASE("imported scenarios reproduce the synthetic pipeline")
{
    // Export the synthetic scenario's MPCs, re-import them, and check the
    // sweep produces identical results.
    const auto cfg = small_config();
    const Scenario synthetic = build_scenario(cfg);
    const std::string path = "test_mpcs_tmp.txt";
    export_mpcs_file(synthetic, path);

    ExperimentConfig imported = cfg;
    imported.source = "import";
    imported.mpc_file = path;
    const Scenario rebuilt = build_scenario(imported);
    CHECK(rebuilt.pbs_power == doctest::Approx(synthetic.pbs_power).epsilon(1e-12));

    const auto a = run_experiment(cfg, 2);
    const auto b = run_experiment(imported, 2);
    std::ostringstream csv_a, csv_b;
    write_csv(a, csv_a);
    write_csv(b, csv_b);
    CHECK(csv_a.str() == csv_b.str());
    std::remove(path.c_str());
}

TEST_CASE("sensing overhead scales the reported throughput")
{
    auto cfg = small_config();
    const auto base = run_experiment(cfg, 2);
    cfg.sensing_sample_capacity = 8.0; // N = 4 -> factor 0.5
    const auto scaled = run_experiment(cfg, 2);
    CHECK(scaled.rows[0].report.throughput ==
          doctest::Approx(0.5 * base.rows[0].report.throughput).epsilon(1e-12));
}

TEST_SUITE_END();
