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
// Coexistence logic: every SINR in the system decomposes into sums of
// frequency-averaged path gains weighted by transmit powers and activity
// bits, so a U x B gain table per station is the only state needed. On top
// of it sit the per-sector probabilistic protection constraint, the
// maximal-beam-set optimizer, and the two baseline decision rules.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "crcoex/radio_env.hpp"
#include "crcoex/sensing.hpp"

namespace crcoex
{

/// Frequency-averaged received path gains for every (UE, beam) pair of both
/// stations; the additive building blocks of every SINR.
struct PowerTable
{
    int num_ues = 0;
    int pbs_beams = 0;
    int sbs_beams = 0;
    std::vector<double> pbs_gain;    ///< [u][k], row-major
    std::vector<double> sbs_gain;    ///< [u][l], row-major
    std::vector<double> sbs_col_sum; ///< per SBS beam: sum over UEs (tie scoring)
    Association association;

    std::span<const double> pbs_row(int u) const
    {
        return {pbs_gain.data() + std::size_t(u) * pbs_beams, std::size_t(pbs_beams)};
    }
    std::span<const double> sbs_row(int u) const
    {
        return {sbs_gain.data() + std::size_t(u) * sbs_beams, std::size_t(sbs_beams)};
    }

    /// Throws ConfigError if dimensions or argmax consistency are violated.
    void validate() const;

    /// Debug dump, one row per UE.
    void save_csv(std::ostream &os) const;
};

/// PU-protection constraint parameters.
struct ConstraintSpec
{
    double theta = 2.0; ///< minimum PU SINR, linear
    double cap = 0.1;   ///< V: max fraction of a sector's PUs below theta
    /// Drop PUs that already miss theta with the PBS alone (all beams on, SBS
    /// silent) from constraint accounting; the primary scheduler is assumed
    /// to keep such UEs out of the downlink schedule.
    bool exclude_baseline_violators = true;
};

/// Exact per-(UE, beam) tables from the scenario channels.
PowerTable build_power_tables(const Scenario &scenario, const Association &assoc);

/// SINR of PU u under the given activity masks; 0 if its serving PBS beam is
/// off.
double pu_sinr(int u, const BeamMask &pbs_mask, const BeamMask &sbs_mask,
               const PowerTable &tables, const Scenario &scenario);

/// SINR of SU u with the station roles interchanged (the whole PBS is
/// foreign interference); 0 if its serving SBS beam is off.
double su_sinr(int u, const BeamMask &pbs_mask, const BeamMask &sbs_mask,
               const PowerTable &tables, const Scenario &scenario);

/// Scenario lint: UEs whose SINR misses theta with all PBS beams on and the
/// SBS silent. These can never be protected by any SBS choice.
std::vector<int> baseline_violators(const PowerTable &tables, const Scenario &scenario,
                                    double theta);

/// Precomputed sector structure for the hot constraint checks. Keeps
/// references to the tables and scenario; both must outlive it.
class ConstraintEvaluator
{
  public:
    ConstraintEvaluator(const PowerTable &tables, const ConstraintSpec &spec,
                        const Scenario &scenario);

    /// True iff every active PBS sector with members keeps its violating
    /// fraction strictly below V.
    bool satisfied(const BeamMask &pbs_mask, const BeamMask &sbs_mask) const;

    /// Fraction of sector k's (post-exclusion) PUs with SINR below theta
    /// under the given masks; 0 for an empty sector.
    double sector_violation_fraction(int k, const BeamMask &pbs_mask,
                                     const BeamMask &sbs_mask) const;

    std::span<const int> sector_members(int k) const { return sectors_[k]; }
    const std::vector<int> &excluded_ues() const { return excluded_; }
    const ConstraintSpec &spec() const { return spec_; }
    const PowerTable &tables() const { return *tables_; }
    const Scenario &scenario() const { return *scenario_; }
    int pbs_beams() const { return tables_->pbs_beams; }
    int sbs_beams() const { return tables_->sbs_beams; }

  private:
    const PowerTable *tables_;
    const Scenario *scenario_;
    ConstraintSpec spec_;
    std::vector<std::vector<int>> sectors_; ///< per PBS beam, post-exclusion
    std::vector<int> excluded_;
};

/// Spec-level constraint check (builds a throwaway evaluator).
bool constraint_satisfied(const BeamMask &pbs_mask, const BeamMask &sbs_mask,
                          const PowerTable &tables, const ConstraintSpec &spec,
                          const Scenario &scenario);

/// Largest feasible SBS beam set under the estimated PBS mask: maximum
/// popcount, ties by total SU-side mean gain, then lowest encoding. Returns
/// the all-zero mask when nothing else is feasible.
BeamMask select_sbs_beams(const BeamMask &pbs_mask_est, const ConstraintEvaluator &evaluator,
                          std::uint64_t enumeration_cap = kDefaultEnumCap);
BeamMask select_sbs_beams(const BeamMask &pbs_mask_est, const PowerTable &tables,
                          const ConstraintSpec &spec, const Scenario &scenario,
                          std::uint64_t enumeration_cap = kDefaultEnumCap);

/// Multi-detection binary access: all beams if the all-on set is feasible
/// under the estimated mask, else silence.
BeamMask mdba_decision(const BeamMask &pbs_mask_est, const ConstraintEvaluator &evaluator);
BeamMask mdba_decision(const BeamMask &pbs_mask_est, const PowerTable &tables,
                       const ConstraintSpec &spec, const Scenario &scenario);

/// Binary-detection binary access: all beams iff no PBS activity was
/// detected.
BeamMask bdba_decision(bool presence, int sbs_beams);

} // namespace crcoex
