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

#include "crcoex/coexistence.hpp"

#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "crcoex/kernels.hpp"

namespace crcoex
{

void PowerTable::validate() const
{
    if (int(association.pbs_beam.size()) != num_ues ||
        int(association.sbs_beam.size()) != num_ues)
        throw ConfigError("association size does not match the UE count");
    if (pbs_gain.size() != std::size_t(num_ues) * pbs_beams ||
        sbs_gain.size() != std::size_t(num_ues) * sbs_beams)
        throw ConfigError("power table dimensions mismatch");
    for (const double g : pbs_gain)
        if (!(g >= 0.0))
            throw ConfigError("power table entries must be >= 0");
    for (const double g : sbs_gain)
        if (!(g >= 0.0))
            throw ConfigError("power table entries must be >= 0");
    for (int u = 0; u < num_ues; ++u)
    {
        const auto row = pbs_row(u);
        const double assoc_gain = row[association.pbs_beam[u]];
        for (int k = 0; k < pbs_beams; ++k)
            if (row[k] > assoc_gain)
                throw ConfigError("UE " + std::to_string(u) +
                                  " is not associated with its strongest PBS beam");
    }
}

void PowerTable::save_csv(std::ostream &os) const
{
    os << "ue,pbs_assoc,sbs_assoc";
    for (int k = 0; k < pbs_beams; ++k)
        os << ",pbs_gain_" << k;
    for (int l = 0; l < sbs_beams; ++l)
        os << ",sbs_gain_" << l;
    os << "\n";
    char buf[40];
    for (int u = 0; u < num_ues; ++u)
    {
        os << u << "," << association.pbs_beam[u] << "," << association.sbs_beam[u];
        for (const double g : pbs_row(u))
        {
            std::snprintf(buf, sizeof buf, ",%.9g", g);
            os << buf;
        }
        for (const double g : sbs_row(u))
        {
            std::snprintf(buf, sizeof buf, ",%.9g", g);
            os << buf;
        }
        os << "\n";
    }
}

PowerTable build_power_tables(const Scenario &scenario, const Association &assoc)
{
    PowerTable t;
    t.num_ues = scenario.num_ues();
    t.pbs_beams = scenario.pbs_cfg.num_beams;
    t.sbs_beams = scenario.sbs_cfg.num_beams;
    t.pbs_gain.resize(std::size_t(t.num_ues) * t.pbs_beams);
    t.sbs_gain.resize(std::size_t(t.num_ues) * t.sbs_beams);
    t.association = assoc;

    for (int u = 0; u < t.num_ues; ++u)
    {
        for (int k = 0; k < t.pbs_beams; ++k)
            t.pbs_gain[std::size_t(u) * t.pbs_beams + k] =
                mean_path_gain(scenario.pbs_to_ue_mpcs[u], k, scenario.pbs_cfg, scenario.grid);
        for (int l = 0; l < t.sbs_beams; ++l)
            t.sbs_gain[std::size_t(u) * t.sbs_beams + l] =
                mean_path_gain(scenario.sbs_to_ue_mpcs[u], l, scenario.sbs_cfg, scenario.grid);
    }
    t.sbs_col_sum.assign(t.sbs_beams, 0.0);
    for (int u = 0; u < t.num_ues; ++u)
        for (int l = 0; l < t.sbs_beams; ++l)
            t.sbs_col_sum[l] += t.sbs_gain[std::size_t(u) * t.sbs_beams + l];
    t.validate();
    return t;
}

namespace
{

void check_masks(const BeamMask &pbs_mask, const BeamMask &sbs_mask, const PowerTable &tables)
{
    if (pbs_mask.owner() != Station::pbs || pbs_mask.size() != tables.pbs_beams)
        throw ConfigError("PBS mask does not match the power table");
    if (sbs_mask.owner() != Station::sbs || sbs_mask.size() != tables.sbs_beams)
        throw ConfigError("SBS mask does not match the power table");
}

} // namespace

double pu_sinr(int u, const BeamMask &pbs_mask, const BeamMask &sbs_mask,
               const PowerTable &tables, const Scenario &scenario)
{
    check_masks(pbs_mask, sbs_mask, tables);
    const int serving = tables.association.pbs_beam[u];
    if (!pbs_mask.test(serving))
        return 0.0;
    const auto &kern = kernels::table();
    const auto pbs_row = tables.pbs_row(u);
    const auto sbs_row = tables.sbs_row(u);
    const double signal = scenario.pbs_power * pbs_row[serving];
    const std::uint32_t others = pbs_mask.value() & ~(std::uint32_t(1) << serving);
    const double p_int =
        scenario.pbs_power * kern.masked_sum(pbs_row.data(), others, pbs_row.size());
    const double s_int =
        scenario.sbs_power * kern.masked_sum(sbs_row.data(), sbs_mask.value(), sbs_row.size());
    return signal / (p_int + s_int + scenario.noise_power);
}

double su_sinr(int u, const BeamMask &pbs_mask, const BeamMask &sbs_mask,
               const PowerTable &tables, const Scenario &scenario)
{
    check_masks(pbs_mask, sbs_mask, tables);
    const int serving = tables.association.sbs_beam[u];
    if (!sbs_mask.test(serving))
        return 0.0;
    const auto &kern = kernels::table();
    const auto pbs_row = tables.pbs_row(u);
    const auto sbs_row = tables.sbs_row(u);
    const double signal = scenario.sbs_power * sbs_row[serving];
    const std::uint32_t others = sbs_mask.value() & ~(std::uint32_t(1) << serving);
    const double s_int =
        scenario.sbs_power * kern.masked_sum(sbs_row.data(), others, sbs_row.size());
    const double p_int =
        scenario.pbs_power * kern.masked_sum(pbs_row.data(), pbs_mask.value(), pbs_row.size());
    return signal / (s_int + p_int + scenario.noise_power);
}

std::vector<int> baseline_violators(const PowerTable &tables, const Scenario &scenario,
                                    double theta)
{
    const auto pbs_all = BeamMask::all_on(Station::pbs, tables.pbs_beams);
    const auto sbs_off = BeamMask::all_off(Station::sbs, tables.sbs_beams);
    std::vector<int> out;
    for (int u = 0; u < tables.num_ues; ++u)
        if (pu_sinr(u, pbs_all, sbs_off, tables, scenario) < theta)
            out.push_back(u);
    return out;
}

ConstraintEvaluator::ConstraintEvaluator(const PowerTable &tables, const ConstraintSpec &spec,
                                         const Scenario &scenario)
    : tables_(&tables), scenario_(&scenario), spec_(spec)
{
    if (!(spec.theta > 0.0))
        throw ConfigError("theta must be positive");
    if (!(spec.cap >= 0.0) || !(spec.cap <= 1.0))
        throw ConfigError("violation cap must lie in [0, 1]");
    if (spec.exclude_baseline_violators)
        excluded_ = baseline_violators(tables, scenario, spec.theta);

    std::vector<char> is_excluded(tables.num_ues, 0);
    for (const int u : excluded_)
        is_excluded[u] = 1;
    sectors_.resize(tables.pbs_beams);
    for (int u = 0; u < tables.num_ues; ++u)
        if (!is_excluded[u])
            sectors_[tables.association.pbs_beam[u]].push_back(u);
}

double ConstraintEvaluator::sector_violation_fraction(int k, const BeamMask &pbs_mask,
                                                      const BeamMask &sbs_mask) const
{
    const auto &members = sectors_[k];
    if (members.empty())
        return 0.0;
    int count = 0;
    for (const int u : members)
        if (pu_sinr(u, pbs_mask, sbs_mask, *tables_, *scenario_) < spec_.theta)
            ++count;
    return double(count) / double(members.size());
}

bool ConstraintEvaluator::satisfied(const BeamMask &pbs_mask, const BeamMask &sbs_mask) const
{
    check_masks(pbs_mask, sbs_mask, *tables_);
    for (int k = 0; k < tables_->pbs_beams; ++k)
    {
        if (!pbs_mask.test(k))
            continue;
        const auto &members = sectors_[k];
        if (members.empty())
            continue;
        const double n = double(members.size());
        int count = 0;
        for (const int u : members)
        {
            if (pu_sinr(u, pbs_mask, sbs_mask, *tables_, *scenario_) < spec_.theta)
            {
                // Strict "< V", except that a sector with zero violators
                // always passes; V = 0 therefore forbids any PU below theta
                // without outlawing clean sectors. The count only grows, so
                // the first offending fraction settles the sector.
                ++count;
                if (!(double(count) / n < spec_.cap))
                    return false;
            }
        }
    }
    return true;
}

bool constraint_satisfied(const BeamMask &pbs_mask, const BeamMask &sbs_mask,
                          const PowerTable &tables, const ConstraintSpec &spec,
                          const Scenario &scenario)
{
    return ConstraintEvaluator(tables, spec, scenario).satisfied(pbs_mask, sbs_mask);
}

BeamMask select_sbs_beams(const BeamMask &pbs_mask_est, const ConstraintEvaluator &evaluator,
                          std::uint64_t enumeration_cap)
{
    const int L = evaluator.sbs_beams();
    if ((std::uint64_t(1) << L) > enumeration_cap)
        throw CapacityError("2^" + std::to_string(L) +
                            " SBS masks exceed the enumeration cap of " +
                            std::to_string(enumeration_cap));

    const auto &kern = kernels::table();
    const double *col_sum = evaluator.tables().sbs_col_sum.data();
    const std::uint32_t limit = std::uint32_t(1) << L;

    // Descending popcount; Gosper's hack walks each level in ascending
    // encoding, so the first best-scoring feasible mask settles both ties.
    for (int pop = L; pop >= 1; --pop)
    {
        std::uint32_t mask = (std::uint32_t(1) << pop) - 1;
        bool found = false;
        std::uint32_t best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        while (mask < limit)
        {
            if (evaluator.satisfied(pbs_mask_est, BeamMask(Station::sbs, L, mask)))
            {
                const double score = kern.masked_sum(col_sum, mask, std::size_t(L));
                if (!found || score > best_score)
                {
                    found = true;
                    best = mask;
                    best_score = score;
                }
            }
            const std::uint32_t c = mask & (~mask + 1);
            const std::uint32_t r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        if (found)
            return {Station::sbs, L, best};
    }
    return BeamMask::all_off(Station::sbs, L);
}

BeamMask select_sbs_beams(const BeamMask &pbs_mask_est, const PowerTable &tables,
                          const ConstraintSpec &spec, const Scenario &scenario,
                          std::uint64_t enumeration_cap)
{
    return select_sbs_beams(pbs_mask_est, ConstraintEvaluator(tables, spec, scenario),
                            enumeration_cap);
}

BeamMask mdba_decision(const BeamMask &pbs_mask_est, const ConstraintEvaluator &evaluator)
{
    const auto all_on = BeamMask::all_on(Station::sbs, evaluator.sbs_beams());
    if (evaluator.satisfied(pbs_mask_est, all_on))
        return all_on;
    return BeamMask::all_off(Station::sbs, evaluator.sbs_beams());
}

BeamMask mdba_decision(const BeamMask &pbs_mask_est, const PowerTable &tables,
                       const ConstraintSpec &spec, const Scenario &scenario)
{
    return mdba_decision(pbs_mask_est, ConstraintEvaluator(tables, spec, scenario));
}

BeamMask bdba_decision(bool presence, int sbs_beams)
{
    return presence ? BeamMask::all_off(Station::sbs, sbs_beams)
                    : BeamMask::all_on(Station::sbs, sbs_beams);
}

} // namespace crcoex
