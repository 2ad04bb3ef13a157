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
//
// Sweep driver: one Monte-Carlo run per (method, N, ratio) cell over a
// shared calibrated scenario, emitted as CSV plus a plain-text summary.
// Cells that differ only in method share their cell seed, so method
// comparisons are paired.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crcoex/config.hpp"

namespace crcoex
{

struct ResultRow
{
    Method method = Method::proposed;
    int num_samples = 0;
    double ratio_db = 0.0;
    std::uint64_t cell_seed = 0;
    MetricsReport report;
};

struct ResultTable
{
    std::vector<ResultRow> rows;
    double calibrated_pbs_power_mw = 0.0;
    long baseline_violator_count = 0;
    int num_ues = 0;
    std::uint64_t master_seed = 0;
};

/// Build (or import) and calibrate the scenario described by the config.
/// The returned scenario carries the calibrated PBS power; sbs_power is
/// left at zero and set per sweep cell.
Scenario build_scenario(const ExperimentConfig &config);

/// Run the full sweep. Deterministic given the config.
ResultTable run_experiment(const ExperimentConfig &config, int threads = 1);

/// CSV schema, fixed column order:
/// method,N,ratio_db,pmo,pci,throughput,detector_err,stderr_pmo,stderr_pci,stderr_thru,seed
/// Undefined metrics are emitted as empty fields.
void write_csv(const ResultTable &table, std::ostream &os);

/// Write the CSV to `path` and return a plain-text summary of per-axis
/// extrema (best throughput cell per method, worst PMO/PCI cells, and the
/// ratio maximizing throughput).
std::string emit_report(const ResultTable &table, const std::string &path);

/// The summary alone.
std::string summarize(const ResultTable &table);

} // namespace crcoex
