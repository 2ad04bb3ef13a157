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
// End-to-end acceptance suite. Each criterion runs on the default synthetic
// scenario (8+8 beams, 100 UEs, F = 16, fixed seeds) or on constructed
// instances, prints one PASS/FAIL line, and the process exits nonzero if
// any criterion fails. Tolerances are pinned in the checks below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "crcoex/experiment.hpp"
#include "../tests/oracles.hpp"
#include "../tests/testutil.hpp"

using namespace crcoex;
using namespace crcoex_test;

namespace
{

int g_threads = 2;

struct CriterionResult
{
    bool pass = true;
    std::string detail;
};

using Criterion = std::function<CriterionResult()>;

/// The default evaluation scenario: generator defaults, PBS power
/// calibrated to a 3 dB minimum SNR, theta = 3 dB, V = 0.1.
Scenario default_scenario()
{
    GenParams params; // 8+8 beams, 100 UEs, F = 16
    params.sinr_threshold = std::pow(10.0, 0.3);
    params.violation_cap = 0.1;
    Scenario sc = generate_synthetic_scenario(params, 1);
    const auto assoc = associate_ues(sc);
    sc.pbs_power = calibrate_pbs_power(sc, assoc, std::pow(10.0, 0.3));
    return sc;
}

ConstraintSpec default_spec(const Scenario &sc)
{
    return {sc.sinr_threshold, sc.violation_cap, true};
}

MetricsReport run_cell(const Scenario &base, const ScenarioAssets &assets, Method method,
                       int num_samples, long intervals, double ratio_db, std::uint64_t seed,
                       bool force_perfect = false)
{
    Scenario cell = base;
    cell.sbs_power = std::pow(10.0, ratio_db / 10.0) * base.pbs_power;
    const SimContext ctx(cell, assets, default_spec(base));
    RunOptions options;
    options.method = method;
    options.num_samples = num_samples;
    options.intervals = intervals;
    options.seed = seed;
    options.threads = g_threads;
    options.force_perfect_detection = force_perfect;
    return run_monte_carlo(ctx, options);
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Optimizer equals the exhaustive enumeration on 200 random instances.
CriterionResult criterion_optimizer_oracle()
{
    Rng rng(20260801);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep)
    {
        const int pbs_beams = 1 + int(rng.next() % 4);
        const int sbs_beams = 1 + int(rng.next() % 12);
        const int ues = 1 + int(rng.next() % 12);

        std::vector<double> pbs_gain(std::size_t(ues) * pbs_beams);
        std::vector<double> sbs_gain(std::size_t(ues) * sbs_beams);
        for (auto &g : pbs_gain)
            g = rng.uniform(0.0, 1.0);
        for (auto &g : sbs_gain)
            g = rng.uniform(0.0, 1.0);
        const auto tables = table_from_gains(ues, pbs_beams, sbs_beams, pbs_gain, sbs_gain);
        const auto scenario =
            bare_scenario(pbs_beams, sbs_beams, rng.uniform(0.5, 4.0), rng.uniform(0.0, 4.0),
                          rng.uniform(0.01, 0.2), rng.uniform(0.5, 3.0), rng.uniform(0.0, 0.5));
        ConstraintSpec spec{scenario.sinr_threshold, scenario.violation_cap,
                            (rng.next() & 1) != 0};
        const auto pbs_mask = sample_pbs_activity(0.5, pbs_beams, rng);

        const auto got = select_sbs_beams(pbs_mask, tables, spec, scenario);
        const auto want = oracle_select(pbs_mask, tables, spec, scenario);
        if (!(got == want))
            return {false, "instance " + std::to_string(rep) + ": got " +
                               std::to_string(got.value()) + ", oracle " +
                               std::to_string(want.value())};
        ++checked;
    }
    return {true, std::to_string(checked) + " random instances, exact match"};
}

// ---------------------------------------------------------------------------
// 2. Table-assembled SINRs equal the direct per-frequency computation.
CriterionResult criterion_sinr_oracle()
{
    GenParams params;
    params.pbs_beams = 4;
    params.sbs_beams = 4;
    params.freq_count = 8;
    params.num_ues = 5;
    Scenario sc = generate_synthetic_scenario(params, 3);
    const auto assoc = associate_ues(sc);
    sc.pbs_power = calibrate_pbs_power(sc, assoc, 2.0);
    sc.sbs_power = 0.4 * sc.pbs_power;
    const auto tables = build_power_tables(sc, assoc);

    double worst = 0.0;
    for (std::uint32_t pb = 0; pb < 16; ++pb)
        for (std::uint32_t sb = 0; sb < 16; ++sb)
        {
            const BeamMask pbs(Station::pbs, 4, pb);
            const BeamMask sbs(Station::sbs, 4, sb);
            for (int u = 0; u < 5; ++u)
            {
                const double pu_got = pu_sinr(u, pbs, sbs, tables, sc);
                const double pu_want = oracle_pu_sinr(sc, assoc, u, pbs, sbs);
                const double su_got = su_sinr(u, pbs, sbs, tables, sc);
                const double su_want = oracle_su_sinr(sc, assoc, u, pbs, sbs);
                worst = std::max(worst, std::abs(pu_got - pu_want) / (1.0 + pu_want));
                worst = std::max(worst, std::abs(su_got - su_want) / (1.0 + su_want));
            }
        }
    if (worst > 1e-9)
        return {false, "worst relative deviation " + fmt(worst)};
    return {true, "256 mask pairs x 5 UEs, worst relative deviation " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 3. Detector consistency in N, plus exactness without noise.
CriterionResult criterion_detector(const Scenario &base, const ScenarioAssets &assets)
{
    const long intervals = 5000;
    const auto err_lo = run_cell(base, assets, Method::proposed, 1, intervals, -5.0, 311)
                            .detector_error_rate;
    const auto err_hi = run_cell(base, assets, Method::proposed, 1000, intervals, -5.0, 311)
                            .detector_error_rate;
    const double se = std::sqrt(err_lo * (1.0 - err_lo) / intervals +
                                err_hi * (1.0 - err_hi) / intervals);
    std::string detail = "err(N=1) = " + fmt(err_lo) + ", err(N=1000) = " + fmt(err_hi) +
                         ", combined SE = " + fmt(se);
    if (!(err_hi <= err_lo - 5.0 * se))
        return {false, detail + " - not 5 SE below"};

    Scenario quiet = base;
    quiet.noise_power = 1e-15 * base.pbs_power;
    const auto quiet_assets = ScenarioAssets::build_exact(quiet);
    const auto noiseless =
        run_cell(quiet, quiet_assets, Method::proposed, 1000, intervals, -5.0, 313)
            .detector_error_rate;
    detail += ", noiseless err(N=1000) = " + fmt(noiseless);
    if (noiseless != 0.0)
        return {false, detail + " - not exactly 0"};
    return {true, detail};
}

// ---------------------------------------------------------------------------
// 4. Perfect detection forces PMO = 0 and PCI = 0 exactly.
CriterionResult criterion_perfect_detection(const Scenario &base, const ScenarioAssets &assets)
{
    const auto report =
        run_cell(base, assets, Method::proposed, 1, 5000, 5.0, 401, /*force_perfect=*/true);
    if (!report.pmo || !report.pci)
        return {false, "metrics undefined over 5000 intervals"};
    std::string detail = "pmo = " + fmt(*report.pmo) + ", pci = " + fmt(*report.pci) +
                         " over 5000 intervals at +5 dB";
    if (*report.pmo != 0.0 || *report.pci != 0.0)
        return {false, detail + " - expected exact zeros"};
    return {true, detail};
}

// ---------------------------------------------------------------------------
// 5. Missed-opportunity curve shape (method ordering and fast decay).
CriterionResult criterion_pmo_shape(const Scenario &base, const ScenarioAssets &assets)
{
    const long intervals = 5000;
    const auto proposed = run_cell(base, assets, Method::proposed, 1000, intervals, -5.0, 500);
    const auto mdba = run_cell(base, assets, Method::mdba, 1000, intervals, -5.0, 500);
    const auto bdba = run_cell(base, assets, Method::bdba, 1000, intervals, -5.0, 500);
    if (!proposed.pmo || !mdba.pmo || !bdba.pmo)
        return {false, "pmo undefined"};

    const auto comb = [](const MetricsReport &a, const MetricsReport &b) {
        return std::sqrt(a.stderr_pmo.value_or(0.0) * a.stderr_pmo.value_or(0.0) +
                         b.stderr_pmo.value_or(0.0) * b.stderr_pmo.value_or(0.0));
    };
    std::string detail = "pmo(proposed/mdba/bdba) = " + fmt(*proposed.pmo) + "/" +
                         fmt(*mdba.pmo) + "/" + fmt(*bdba.pmo);
    if (!(*proposed.pmo <= *mdba.pmo + 2.0 * comb(proposed, mdba)))
        return {false, detail + " - proposed above mdba"};
    if (!(*mdba.pmo <= *bdba.pmo + 2.0 * comb(mdba, bdba)))
        return {false, detail + " - mdba above bdba"};

    for (const int n : {100, 300, 1000})
    {
        const auto report = run_cell(base, assets, Method::proposed, n, intervals, -20.0, 501);
        if (!report.pmo)
            return {false, "pmo undefined at -20 dB"};
        detail += ", pmo(-20 dB, N=" + std::to_string(n) + ") = " + fmt(*report.pmo);
        if (!(*report.pmo <= 2.0 * report.stderr_pmo.value_or(0.0)))
            return {false, detail + " - not within 2 SE of 0"};
    }
    return {true, detail};
}

// ---------------------------------------------------------------------------
// 6. Catastrophic-interference curve shape at +5 dB.
CriterionResult criterion_pci_shape(const Scenario &base, const ScenarioAssets &assets)
{
    const long intervals = 5000;
    const std::vector<int> grid{1, 3, 10, 30, 100, 300, 1000};
    std::vector<MetricsReport> reports;
    for (const int n : grid)
        reports.push_back(run_cell(base, assets, Method::proposed, n, intervals, 5.0, 600));

    std::string detail = "pci(+5 dB) =";
    for (const auto &r : reports)
    {
        if (!r.pci)
            return {false, "pci undefined"};
        detail += " " + fmt(*r.pci);
    }
    if (!(*reports.front().pci > 0.0))
        return {false, detail + " - pci(N=1) must be positive for the comparison"};

    for (std::size_t i = 1; i < reports.size(); ++i)
    {
        const double se_prev = reports[i - 1].stderr_pci.value_or(0.0);
        const double se_here = reports[i].stderr_pci.value_or(0.0);
        const double slack = 2.0 * std::sqrt(se_prev * se_prev + se_here * se_here);
        if (!(*reports[i].pci <= *reports[i - 1].pci + slack))
            return {false, detail + " - increases at N=" + std::to_string(grid[i])};
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] >= 100 && !(*reports[i].pci < *reports.front().pci))
            return {false, detail + " - N=" + std::to_string(grid[i]) +
                               " not below the N=1 operating point"};
    return {true, detail};
}

// ---------------------------------------------------------------------------
// 7. Throughput peaks at the -5 dB power ratio.
CriterionResult criterion_throughput_shape(const Scenario &base, const ScenarioAssets &assets)
{
    const long intervals = 5000;
    const auto lo = run_cell(base, assets, Method::proposed, 1000, intervals, -20.0, 700);
    const auto mid = run_cell(base, assets, Method::proposed, 1000, intervals, -5.0, 700);
    const auto hi = run_cell(base, assets, Method::proposed, 1000, intervals, 5.0, 700);
    const std::string detail = "thru(-20/-5/+5 dB) = " + fmt(lo.throughput) + "/" +
                               fmt(mid.throughput) + "/" + fmt(hi.throughput);
    const auto comb = [](const MetricsReport &a, const MetricsReport &b) {
        return std::sqrt(a.stderr_thru * a.stderr_thru + b.stderr_thru * b.stderr_thru);
    };
    if (!(mid.throughput >= lo.throughput - 2.0 * comb(mid, lo)))
        return {false, detail + " - -5 dB below -20 dB"};
    if (!(mid.throughput >= hi.throughput - 2.0 * comb(mid, hi)))
        return {false, detail + " - -5 dB below +5 dB"};
    return {true, detail};
}

// ---------------------------------------------------------------------------
// 8. Degenerate power: the proposed method collapses onto BDBA.
CriterionResult criterion_bdba_convergence(const Scenario &base, const ScenarioAssets &assets)
{
    Scenario extreme = base;
    extreme.sbs_power = 1e6 * base.pbs_power; // +60 dB
    const SimContext ctx(extreme, assets, default_spec(base));

    // Construction premise: every sector keeps members after the lint, and
    // any single SBS beam already violates any active sector on its own.
    for (int k = 0; k < 8; ++k)
    {
        if (ctx.evaluator.sector_members(k).empty())
            return {false, "sector " + std::to_string(k) + " has no protected members"};
        const BeamMask only_k(Station::pbs, 8, std::uint32_t(1) << k);
        for (int l = 0; l < 8; ++l)
        {
            const BeamMask only_l(Station::sbs, 8, std::uint32_t(1) << l);
            if (ctx.evaluator.satisfied(only_k, only_l))
                return {false, "premise broken: beam " + std::to_string(l) +
                                   " alone is feasible for sector " + std::to_string(k)};
        }
    }

    const long intervals = 5000;
    DecisionCache cache_a, cache_b;
    cache_a.reset(8);
    cache_b.reset(8);
    for (long i = 0; i < intervals; ++i)
    {
        Rng rng_a(substream_seed(801, i));
        Rng rng_b(substream_seed(801, i));
        const auto oa = run_interval(ctx, Method::proposed, 64, rng_a, false, &cache_a);
        const auto ob = run_interval(ctx, Method::bdba, 64, rng_b, false, &cache_b);
        if (!(oa.chosen_sbs_mask == ob.chosen_sbs_mask))
            return {false, "masks differ in interval " + std::to_string(i)};
    }
    return {true, "proposed == bdba in all " + std::to_string(intervals) +
                      " intervals at +60 dB"};
}

// ---------------------------------------------------------------------------
// 9. Invariant bundle.
CriterionResult criterion_invariants(const Scenario &base, const ScenarioAssets &assets)
{
    // Boresight pattern value.
    for (int B = 1; B <= 16; ++B)
        for (const double steer : BeamConfig::fourier(B).steer_angles)
        {
            const auto g = beam_pattern(steer, B, steer);
            if (std::abs(g.real() - B) > 1e-12 * B || std::abs(g.imag()) > 1e-12)
                return {false, "boresight pattern deviates at B = " + std::to_string(B)};
        }

    // Signature noise floor and disjoint additivity on the default scenario.
    const auto &table = assets.signatures;
    const auto g0 = table.signature(0);
    for (int l = 0; l < 8; ++l)
        if (std::abs(g0[l] - base.noise_power) > 1e-12 * base.noise_power)
            return {false, "silent signature is not the noise floor"};
    Rng rng(901);
    for (int rep = 0; rep < 200; ++rep)
    {
        const std::uint32_t a = std::uint32_t(rng.next()) & 0xFFu;
        const std::uint32_t b = std::uint32_t(rng.next()) & 0xFFu & ~a;
        const auto ga = table.signature(a);
        const auto gb = table.signature(b);
        const auto gu = table.signature(a | b);
        for (int l = 0; l < 8; ++l)
        {
            const double lhs = gu[l] - base.noise_power;
            const double rhs = (ga[l] - base.noise_power) + (gb[l] - base.noise_power);
            if (std::abs(lhs - rhs) > 1e-12 * (std::abs(rhs) + base.noise_power))
                return {false, "disjoint-mask additivity broken"};
        }
    }

    // Feasible-set submask monotonicity on 1000 random (mask, instance) pairs.
    Rng inst_rng(902);
    int pairs = 0;
    while (pairs < 1000)
    {
        const int sbs_beams = 2 + int(inst_rng.next() % 7);
        std::vector<double> pbs_gain(6 * 3), sbs_gain(std::size_t(6) * sbs_beams);
        for (auto &g : pbs_gain)
            g = inst_rng.uniform(0.0, 1.0);
        for (auto &g : sbs_gain)
            g = inst_rng.uniform(0.0, 1.0);
        const auto tables = table_from_gains(6, 3, sbs_beams, pbs_gain, sbs_gain);
        const auto scenario = bare_scenario(3, sbs_beams, 1.0, inst_rng.uniform(0.0, 3.0),
                                            0.05, inst_rng.uniform(0.5, 3.0),
                                            inst_rng.uniform(0.0, 0.4));
        ConstraintSpec spec{scenario.sinr_threshold, scenario.violation_cap, false};
        const ConstraintEvaluator ev(tables, spec, scenario);
        const auto pbs_mask = sample_pbs_activity(0.5, 3, inst_rng);
        const std::uint32_t bits =
            std::uint32_t(inst_rng.next()) & ((1u << sbs_beams) - 1u);
        if (!ev.satisfied(pbs_mask, BeamMask(Station::sbs, sbs_beams, bits)))
            continue;
        std::uint32_t sub = bits;
        do
        {
            if (!ev.satisfied(pbs_mask, BeamMask(Station::sbs, sbs_beams, sub)))
                return {false, "submask monotonicity broken"};
            sub = (sub - 1) & bits;
        } while (sub != bits && bits != 0);
        ++pairs;
    }

    // Bit-reproducibility of a full sweep cell.
    ExperimentConfig cfg;
    cfg.synth = GenParams{};
    cfg.methods = {Method::proposed};
    cfg.n_samples = {100};
    cfg.ratios_db = {-5.0};
    cfg.intervals = 300;
    cfg.master_seed = 903;
    const auto t1 = run_experiment(cfg, 1);
    const auto t2 = run_experiment(cfg, g_threads);
    std::ostringstream csv1, csv2;
    write_csv(t1, csv1);
    write_csv(t2, csv2);
    if (csv1.str() != csv2.str())
        return {false, "sweep cell is not bit-reproducible"};

    return {true, "pattern, signature, monotonicity and reproducibility invariants hold"};
}

} // namespace

int main(int argc, char **argv)
{
    if (argc > 1)
        g_threads = std::max(1, std::atoi(argv[1]));

    std::printf("building default scenario (8+8 beams, 100 UEs, F = 16)...\n");
    const Scenario base = default_scenario();
    const ScenarioAssets assets = ScenarioAssets::build_exact(base);

    const std::vector<std::pair<std::string, Criterion>> criteria = {
        {"optimizer matches exhaustive enumeration", criterion_optimizer_oracle},
        {"table SINRs match per-frequency oracle", criterion_sinr_oracle},
        {"detector consistency and noiseless exactness",
         [&] { return criterion_detector(base, assets); }},
        {"perfect detection gives zero PMO and PCI",
         [&] { return criterion_perfect_detection(base, assets); }},
        {"missed-opportunity curve shape",
         [&] { return criterion_pmo_shape(base, assets); }},
        {"catastrophic-interference curve shape",
         [&] { return criterion_pci_shape(base, assets); }},
        {"throughput peaks at -5 dB",
         [&] { return criterion_throughput_shape(base, assets); }},
        {"degenerate power converges to BDBA",
         [&] { return criterion_bdba_convergence(base, assets); }},
        {"invariant bundle", [&] { return criterion_invariants(base, assets); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try
        {
            result = criteria[i].second();
        }
        catch (const std::exception &e)
        {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %zu. %s (%.1fs): %s\n", result.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), seconds, result.detail.c_str());
        std::fflush(stdout);
        if (!result.pass)
            ++failures;
    }
    if (failures)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
