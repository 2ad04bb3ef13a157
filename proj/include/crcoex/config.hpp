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
// Experiment configuration: a flat key-value text format with [sections].
// '#' starts a comment, lists are space separated, unknown keys are
// rejected. All defaults are documented here and echoed by
// canonical_config() for provenance.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crcoex/evaluation.hpp"
#include "crcoex/scenario_gen.hpp"

namespace crcoex
{

struct ExperimentConfig
{
    // [scenario]
    std::string source = "synthetic"; ///< "synthetic" or "import"
    std::string mpc_file;             ///< MPC path when source = import
    GenParams synth;                  ///< includes beam/grid/noise settings
    std::uint64_t gen_seed = 1;
    double target_min_snr_db = 3.0;   ///< PBS power calibration target

    // [constraint]
    double theta_db = 3.0;
    double violation_cap = 0.1;
    bool exclude_baseline_violators = true;

    // [sweep]
    std::vector<Method> methods = {Method::proposed, Method::mdba, Method::bdba};
    std::vector<int> n_samples = {1, 3, 10, 30, 100, 300, 1000};
    std::vector<double> ratios_db = {-20.0, -5.0, 5.0};
    long intervals = 5000;
    double p_on = 0.5;
    std::uint64_t master_seed = 1;
    std::string signature_mode = "exact"; ///< "exact" or "learned"
    int signature_frames = 1000;
    int signature_frame_samples = 100;
    /// When > 0, N of these per-interval sample slots are spent sensing and
    /// reported throughput is scaled by (1 - N/capacity).
    double sensing_sample_capacity = 0.0;

    // [output]
    std::string csv_path = "results.csv";

    double theta_linear() const;
    double target_min_snr_linear() const;

    friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

/// Parse and validate; unknown keys and malformed values raise ParseError
/// with the key path and line number.
ExperimentConfig parse_config(std::istream &is);
ExperimentConfig parse_config_file(const std::string &path);

/// Canonical text form with every key explicit; re-parsing it reproduces the
/// config exactly.
std::string canonical_config(const ExperimentConfig &config);

} // namespace crcoex
