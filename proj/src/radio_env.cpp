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

#include "crcoex/radio_env.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "crcoex/kernels.hpp"

namespace crcoex
{

BeamMask::BeamMask(Station owner, int num_beams, std::uint32_t bits)
    : bits_(bits), size_(num_beams), owner_(owner)
{
    if (num_beams < 1 || num_beams > 31)
        throw ConfigError("beam mask length must lie in [1, 31]");
    if (num_beams < 32 && (bits >> num_beams) != 0)
        throw ConfigError("beam mask bits exceed its length");
}

BeamMask BeamMask::all_on(Station owner, int num_beams)
{
    if (num_beams < 1 || num_beams > 31)
        throw ConfigError("beam mask length must lie in [1, 31]");
    return {owner, num_beams, (std::uint32_t(1) << num_beams) - 1};
}

void BeamMask::set(int k, bool value)
{
    if (k < 0 || k >= size_)
        throw ConfigError("beam index out of mask range");
    if (value)
        bits_ |= std::uint32_t(1) << k;
    else
        bits_ &= ~(std::uint32_t(1) << k);
}

BsBsChannels BsBsChannels::from_scenario(const Scenario &scenario)
{
    BsBsChannels out;
    out.num_freqs = scenario.grid.count;
    out.num_tx = scenario.pbs_cfg.num_beams;
    out.num_rx = scenario.sbs_cfg.num_beams;
    out.h.resize(std::size_t(out.num_freqs) * out.num_tx * out.num_rx);
    for (int j = 0; j < out.num_freqs; ++j)
        for (int k = 0; k < out.num_tx; ++k)
            for (int l = 0; l < out.num_rx; ++l)
                out.h[(std::size_t(j) * out.num_tx + k) * out.num_rx + l] =
                    bs_to_bs_channel(scenario.pbs_to_sbs_mpcs, k, l, scenario.grid.frequencies[j],
                                     scenario.pbs_cfg, scenario.sbs_cfg);
    return out;
}

Association associate_ues(const Scenario &scenario)
{
    const int num_ues = scenario.num_ues();
    Association assoc;
    assoc.pbs_beam.resize(num_ues);
    assoc.sbs_beam.resize(num_ues);

    const auto argmax_beam = [&](const std::vector<MultipathComponent> &mpcs,
                                 const BeamConfig &cfg) {
        int best = 0;
        double best_gain = -1.0;
        for (int k = 0; k < cfg.num_beams; ++k)
        {
            const double g = mean_path_gain(mpcs, k, cfg, scenario.grid);
            if (g > best_gain) // strict: ties keep the lowest index
            {
                best_gain = g;
                best = k;
            }
        }
        return best;
    };

    for (int u = 0; u < num_ues; ++u)
    {
        assoc.pbs_beam[u] = argmax_beam(scenario.pbs_to_ue_mpcs[u], scenario.pbs_cfg);
        assoc.sbs_beam[u] = argmax_beam(scenario.sbs_to_ue_mpcs[u], scenario.sbs_cfg);
    }
    return assoc;
}

BeamMask sample_pbs_activity(double p_on, int num_beams, Rng &rng)
{
    if (!(p_on >= 0.0) || !(p_on <= 1.0))
        throw ConfigError("p_on must lie in [0, 1]");
    std::uint32_t bits = 0;
    for (int k = 0; k < num_beams; ++k)
        if (rng.bernoulli(p_on))
            bits |= std::uint32_t(1) << k;
    return {Station::pbs, num_beams, bits};
}

SensingBlock synthesize_sensing_samples(const Scenario &scenario, const BsBsChannels &channels,
                                        const BeamMask &pbs_mask, int num_samples, Rng &rng)
{
    if (num_samples < 1)
        throw ConfigError("sample count must be >= 1");
    if (pbs_mask.owner() != Station::pbs || pbs_mask.size() != scenario.pbs_cfg.num_beams)
        throw ConfigError("mask does not belong to the scenario's PBS");

    const int F = scenario.grid.count;
    const int L = scenario.sbs_cfg.num_beams;

    SensingBlock block;
    block.num_freqs = F;
    block.num_beams = L;
    block.num_samples = num_samples;
    block.true_mask = pbs_mask;
    block.samples.assign(std::size_t(F) * L * num_samples, {0.0, 0.0});

    std::vector<std::int32_t> active;
    for (int k = 0; k < pbs_mask.size(); ++k)
        if (pbs_mask.test(k))
            active.push_back(k);

    const auto &kern = kernels::table();
    std::vector<std::complex<double>> tx(active.size());
    std::vector<std::complex<double>> rx(L);

    // Draw order is fixed: per (j, n), the active-beam symbols in ascending
    // beam order, then the per-beam noise in ascending l.
    for (int j = 0; j < F; ++j)
    {
        const std::complex<double> *h_cols = channels.freq_block(j);
        for (int n = 0; n < num_samples; ++n)
        {
            for (std::size_t a = 0; a < active.size(); ++a)
                tx[a] = rng.complex_normal(scenario.pbs_power);
            std::fill(rx.begin(), rx.end(), std::complex<double>(0.0, 0.0));
            if (!active.empty())
                kern.cmatvec_acc(h_cols, std::size_t(L), active.data(), active.size(), tx.data(),
                                 rx.data(), std::size_t(L));
            for (int l = 0; l < L; ++l)
                block.at(j, l, n) = rx[l] + rng.complex_normal(scenario.noise_power);
        }
    }
    return block;
}

SensingBlock synthesize_sensing_samples(const Scenario &scenario, const BeamMask &pbs_mask,
                                        int num_samples, Rng &rng)
{
    return synthesize_sensing_samples(scenario, BsBsChannels::from_scenario(scenario), pbs_mask,
                                      num_samples, rng);
}

double calibrate_pbs_power(const Scenario &scenario, const Association &assoc, double target_snr)
{
    if (!(target_snr > 0.0))
        throw ConfigError("target SNR must be positive");
    const int num_ues = scenario.num_ues();
    if (num_ues == 0)
        throw ConfigError("calibration requires at least one UE");

    double min_gain = std::numeric_limits<double>::infinity();
    for (int u = 0; u < num_ues; ++u)
    {
        const double g = mean_path_gain(scenario.pbs_to_ue_mpcs[u], assoc.pbs_beam[u],
                                        scenario.pbs_cfg, scenario.grid);
        if (g <= 0.0)
            throw ConfigError("UE " + std::to_string(u) +
                              " has zero gain on its associated PBS beam");
        min_gain = std::min(min_gain, g);
    }
    return target_snr * scenario.noise_power / min_gain;
}

} // namespace crcoex
