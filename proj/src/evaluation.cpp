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

#include "crcoex/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace crcoex
{

std::string to_string(Method method)
{
    switch (method)
    {
    case Method::proposed:
        return "proposed";
    case Method::mdba:
        return "mdba";
    case Method::bdba:
        return "bdba";
    }
    return "?";
}

std::optional<Method> method_from_string(std::string_view name)
{
    if (name == "proposed")
        return Method::proposed;
    if (name == "mdba")
        return Method::mdba;
    if (name == "bdba")
        return Method::bdba;
    return std::nullopt;
}

ScenarioAssets ScenarioAssets::build_exact(const Scenario &scenario,
                                           std::uint64_t enumeration_cap)
{
    ScenarioAssets assets;
    assets.assoc = associate_ues(scenario);
    assets.channels = BsBsChannels::from_scenario(scenario);
    assets.tables = build_power_tables(scenario, assets.assoc);
    assets.signatures = SignatureTable::exact(scenario, enumeration_cap);
    return assets;
}

ScenarioAssets ScenarioAssets::build_learned(const Scenario &scenario, int frames_per_mask,
                                             int samples_per_frame, std::uint64_t seed,
                                             std::uint64_t enumeration_cap)
{
    ScenarioAssets assets;
    assets.assoc = associate_ues(scenario);
    assets.channels = BsBsChannels::from_scenario(scenario);
    assets.tables = build_power_tables(scenario, assets.assoc);
    assets.signatures = SignatureTable::learned(scenario, frames_per_mask, samples_per_frame,
                                                seed, enumeration_cap);
    return assets;
}

void DecisionCache::reset(int pbs_beams)
{
    select_.assign(std::size_t(1) << pbs_beams, -1);
    mdba_.assign(std::size_t(1) << pbs_beams, -1);
}

std::optional<std::uint32_t> DecisionCache::get_select(std::uint32_t pbs_bits) const
{
    if (pbs_bits >= select_.size() || select_[pbs_bits] < 0)
        return std::nullopt;
    return std::uint32_t(select_[pbs_bits]);
}

void DecisionCache::put_select(std::uint32_t pbs_bits, std::uint32_t chosen_bits)
{
    if (pbs_bits < select_.size())
        select_[pbs_bits] = chosen_bits;
}

std::optional<bool> DecisionCache::get_mdba(std::uint32_t pbs_bits) const
{
    if (pbs_bits >= mdba_.size() || mdba_[pbs_bits] < 0)
        return std::nullopt;
    return mdba_[pbs_bits] != 0;
}

void DecisionCache::put_mdba(std::uint32_t pbs_bits, bool all_on_feasible)
{
    if (pbs_bits < mdba_.size())
        mdba_[pbs_bits] = all_on_feasible ? 1 : 0;
}

namespace
{

BeamMask cached_select(const SimContext &ctx, const BeamMask &pbs_mask, DecisionCache *cache)
{
    if (cache)
        if (const auto hit = cache->get_select(pbs_mask.value()))
            return {Station::sbs, ctx.evaluator.sbs_beams(), *hit};
    const BeamMask chosen = select_sbs_beams(pbs_mask, ctx.evaluator);
    if (cache)
        cache->put_select(pbs_mask.value(), chosen.value());
    return chosen;
}

BeamMask cached_mdba(const SimContext &ctx, const BeamMask &pbs_mask, DecisionCache *cache)
{
    const int L = ctx.evaluator.sbs_beams();
    if (cache)
        if (const auto hit = cache->get_mdba(pbs_mask.value()))
            return *hit ? BeamMask::all_on(Station::sbs, L) : BeamMask::all_off(Station::sbs, L);
    const BeamMask chosen = mdba_decision(pbs_mask, ctx.evaluator);
    if (cache)
        cache->put_mdba(pbs_mask.value(), chosen.any());
    return chosen;
}

} // namespace

IntervalOutcome run_interval(const SimContext &ctx, Method method, int num_samples, Rng &rng,
                             bool force_perfect_detection, DecisionCache *cache, double p_on)
{
    const Scenario &scenario = *ctx.scenario;
    const ScenarioAssets &assets = *ctx.assets;

    IntervalOutcome out;
    out.true_pbs_mask = sample_pbs_activity(p_on, scenario.pbs_cfg.num_beams, rng);
    const SensingBlock block = synthesize_sensing_samples(scenario, assets.channels,
                                                          out.true_pbs_mask, num_samples, rng);
    const EnergyVector x = energy_features(block);
    out.est_pbs_mask =
        force_perfect_detection ? out.true_pbs_mask : ml_detect(x, assets.signatures);

    switch (method)
    {
    case Method::proposed:
        out.chosen_sbs_mask = cached_select(ctx, out.est_pbs_mask, cache);
        break;
    case Method::mdba:
        out.chosen_sbs_mask = cached_mdba(ctx, out.est_pbs_mask, cache);
        break;
    case Method::bdba:
        out.chosen_sbs_mask = bdba_decision(out.est_pbs_mask.any(), ctx.evaluator.sbs_beams());
        break;
    }
    out.gt_sbs_mask = cached_select(ctx, out.true_pbs_mask, cache);

    const int pbs_beams = scenario.pbs_cfg.num_beams;
    out.sector_violation.resize(pbs_beams, 0.0);
    for (int k = 0; k < pbs_beams; ++k)
        if (out.true_pbs_mask.test(k))
            out.sector_violation[k] = ctx.evaluator.sector_violation_fraction(
                k, out.true_pbs_mask, out.chosen_sbs_mask);

    const int num_ues = scenario.num_ues();
    out.su_sinr_values.resize(num_ues);
    for (int u = 0; u < num_ues; ++u)
        out.su_sinr_values[u] =
            su_sinr(u, out.true_pbs_mask, out.chosen_sbs_mask, assets.tables, scenario);
    return out;
}

std::optional<double> pmo(std::span<const IntervalOutcome> outcomes)
{
    long missed = 0;
    long admissible = 0;
    for (const auto &o : outcomes)
    {
        admissible += o.gt_sbs_mask.popcount();
        missed += std::popcount(o.gt_sbs_mask.value() & ~o.chosen_sbs_mask.value());
    }
    if (admissible == 0)
        return std::nullopt;
    return double(missed) / double(admissible);
}

std::optional<double> pci(std::span<const IntervalOutcome> outcomes, double violation_cap)
{
    long severe = 0;
    long active = 0;
    for (const auto &o : outcomes)
    {
        active += o.true_pbs_mask.popcount();
        for (int k = 0; k < o.true_pbs_mask.size(); ++k)
            if (o.true_pbs_mask.test(k) && o.sector_violation[k] > violation_cap)
                ++severe;
    }
    if (active == 0)
        return std::nullopt;
    return double(severe) / double(active);
}

double throughput(std::span<const IntervalOutcome> outcomes, double theta)
{
    if (outcomes.empty())
        return 0.0;
    double acc = 0.0;
    for (const auto &o : outcomes)
    {
        long served = 0;
        for (const double s : o.su_sinr_values)
            served += s > theta ? 1 : 0;
        acc += o.su_sinr_values.empty() ? 0.0
                                        : double(served) / double(o.su_sinr_values.size());
    }
    return acc / double(outcomes.size());
}

namespace
{

double binomial_stderr(double p, long n)
{
    return n > 0 ? std::sqrt(p * (1.0 - p) / double(n)) : 0.0;
}

} // namespace

MetricsReport run_monte_carlo(const SimContext &ctx, const RunOptions &options)
{
    if (options.intervals < 1)
        throw ConfigError("interval count must be >= 1");
    if (!(options.p_on >= 0.0) || !(options.p_on <= 1.0))
        throw ConfigError("p_on must lie in [0, 1]");

    std::vector<IntervalOutcome> outcomes(std::size_t(options.intervals));
    const int threads = std::clamp(options.threads, 1, int(options.intervals));

    const auto worker = [&](long lo, long hi) {
        DecisionCache cache;
        cache.reset(ctx.scenario->pbs_cfg.num_beams);
        for (long i = lo; i < hi; ++i)
        {
            Rng rng(substream_seed(options.seed, std::uint64_t(i)));
            outcomes[std::size_t(i)] =
                run_interval(ctx, options.method, options.num_samples, rng,
                             options.force_perfect_detection, &cache, options.p_on);
        }
    };

    if (threads == 1)
    {
        worker(0, options.intervals);
    }
    else
    {
        std::vector<std::thread> pool;
        const long chunk = (options.intervals + threads - 1) / threads;
        for (int t = 0; t < threads; ++t)
        {
            const long lo = t * chunk;
            const long hi = std::min<long>(options.intervals, lo + chunk);
            if (lo < hi)
                pool.emplace_back(worker, lo, hi);
        }
        for (auto &th : pool)
            th.join();
    }

    MetricsReport report;
    report.intervals = options.intervals;
    report.method = options.method;
    report.num_samples = options.num_samples;
    report.seed = options.seed;
    report.p_on = options.p_on;

    report.pmo = pmo(outcomes);
    report.pci = pci(outcomes, ctx.spec.cap);
    report.throughput = throughput(outcomes, ctx.spec.theta);

    long admissible = 0;
    long active = 0;
    long detector_errors = 0;
    for (const auto &o : outcomes)
    {
        admissible += o.gt_sbs_mask.popcount();
        active += o.true_pbs_mask.popcount();
        detector_errors += o.est_pbs_mask == o.true_pbs_mask ? 0 : 1;
    }
    report.detector_error_rate = double(detector_errors) / double(options.intervals);
    if (report.pmo)
        report.stderr_pmo = binomial_stderr(*report.pmo, admissible);
    if (report.pci)
        report.stderr_pci = binomial_stderr(*report.pci, active);

    // Per-interval throughput values are i.i.d.; report the sample stderr.
    double mean = report.throughput;
    double ss = 0.0;
    for (const auto &o : outcomes)
    {
        long served = 0;
        for (const double s : o.su_sinr_values)
            served += s > ctx.spec.theta ? 1 : 0;
        const double t =
            o.su_sinr_values.empty() ? 0.0 : double(served) / double(o.su_sinr_values.size());
        ss += (t - mean) * (t - mean);
    }
    report.stderr_thru = options.intervals > 1
                             ? std::sqrt(ss / double(options.intervals - 1) /
                                         double(options.intervals))
                             : 0.0;
    return report;
}

MetricsReport run_monte_carlo(const Scenario &scenario, const ConstraintSpec &spec,
                              int num_samples, long intervals, Method method,
                              std::uint64_t seed)
{
    const ScenarioAssets assets = ScenarioAssets::build_exact(scenario);
    const SimContext ctx(scenario, assets, spec);
    RunOptions options;
    options.method = method;
    options.num_samples = num_samples;
    options.intervals = intervals;
    options.seed = seed;
    return run_monte_carlo(ctx, options);
}

} // namespace crcoex
