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
// Per-interval sensing/decision pipeline, Monte-Carlo driver and the three
// evaluation metrics (missed opportunities, catastrophic interference,
// secondary throughput) with ground-truth bookkeeping. Intervals draw from
// per-index rng substreams, so results are independent of thread count and
// execution order.

#pragma once

#include <optional>
#include <span>
#include <string>

#include "crcoex/coexistence.hpp"

namespace crcoex
{

enum class Method
{
    proposed,
    mdba,
    bdba
};

std::string to_string(Method method);
std::optional<Method> method_from_string(std::string_view name);

/// Everything derived from a scenario that is independent of the SBS
/// transmit power, shareable across sweep cells.
struct ScenarioAssets
{
    Association assoc;
    BsBsChannels channels;
    PowerTable tables;
    SignatureTable signatures;

    static ScenarioAssets build_exact(const Scenario &scenario,
                                      std::uint64_t enumeration_cap = kDefaultEnumCap);
    static ScenarioAssets build_learned(const Scenario &scenario, int frames_per_mask,
                                        int samples_per_frame, std::uint64_t seed,
                                        std::uint64_t enumeration_cap = kDefaultEnumCap);
};

/// One scenario + constraint binding; immutable and safe for concurrent use.
struct SimContext
{
    const Scenario *scenario;
    const ScenarioAssets *assets;
    ConstraintSpec spec;
    ConstraintEvaluator evaluator;

    SimContext(const Scenario &scenario_in, const ScenarioAssets &assets_in,
               const ConstraintSpec &spec_in)
        : scenario(&scenario_in), assets(&assets_in), spec(spec_in),
          evaluator(assets_in.tables, spec_in, scenario_in)
    {
    }
};

/// Memoizes optimizer decisions per PBS mask (they depend on nothing else
/// within one context). One instance per worker thread.
class DecisionCache
{
  public:
    void reset(int pbs_beams);
    std::optional<std::uint32_t> get_select(std::uint32_t pbs_bits) const;
    void put_select(std::uint32_t pbs_bits, std::uint32_t chosen_bits);
    std::optional<bool> get_mdba(std::uint32_t pbs_bits) const;
    void put_mdba(std::uint32_t pbs_bits, bool all_on_feasible);

  private:
    std::vector<std::int64_t> select_; ///< -1 = unset
    std::vector<std::int8_t> mdba_;    ///< -1 = unset
};

/// Everything recorded about one interval.
struct IntervalOutcome
{
    BeamMask true_pbs_mask;
    BeamMask est_pbs_mask;
    BeamMask chosen_sbs_mask;
    BeamMask gt_sbs_mask; ///< optimizer run on the true mask
    std::vector<double> sector_violation; ///< per PBS sector, chosen vs true
    std::vector<double> su_sinr_values;   ///< per UE, chosen vs true
};

struct RunOptions
{
    Method method = Method::proposed;
    int num_samples = 100; ///< N
    long intervals = 5000; ///< I
    std::uint64_t seed = 1;
    double p_on = 0.5;
    bool force_perfect_detection = false;
    int threads = 1;
};

/// Aggregated metrics of one Monte-Carlo run. Metrics whose denominator
/// never occurred are reported as "undefined" (empty optional), never as 0/0.
struct MetricsReport
{
    std::optional<double> pmo;
    std::optional<double> pci;
    double throughput = 0.0;
    double detector_error_rate = 0.0;
    std::optional<double> stderr_pmo;
    std::optional<double> stderr_pci;
    double stderr_thru = 0.0;
    long intervals = 0;
    Method method = Method::proposed;
    int num_samples = 0;
    std::uint64_t seed = 0;
    double p_on = 0.5;
};

/// Sense, detect, decide and score a single interval.
IntervalOutcome run_interval(const SimContext &ctx, Method method, int num_samples, Rng &rng,
                             bool force_perfect_detection = false,
                             DecisionCache *cache = nullptr, double p_on = 0.5);

/// Probability of missed opportunity: missed gt-admissible beam slots over
/// all gt-admissible beam slots.
std::optional<double> pmo(std::span<const IntervalOutcome> outcomes);

/// Probability of catastrophic interference: active PBS beam-intervals whose
/// violation fraction exceeded V, over all active PBS beam-intervals.
std::optional<double> pci(std::span<const IntervalOutcome> outcomes, double violation_cap);

/// Mean fraction of UEs whose secondary SINR exceeds theta.
double throughput(std::span<const IntervalOutcome> outcomes, double theta);

/// Aggregate `intervals` independent intervals; deterministic given the
/// seed regardless of `threads`.
MetricsReport run_monte_carlo(const SimContext &ctx, const RunOptions &options);

/// Convenience overload matching the scenario-level call shape.
MetricsReport run_monte_carlo(const Scenario &scenario, const ConstraintSpec &spec,
                              int num_samples, long intervals, Method method,
                              std::uint64_t seed);

} // namespace crcoex
