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

#include "crcoex/sensing.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "crcoex/kernels.hpp"

namespace crcoex
{

namespace
{

void check_enumeration(int pbs_beams, std::uint64_t cap)
{
    if (pbs_beams > 20)
        throw CapacityError("signature tables support at most 20 PBS beams (2^B masks)");
    if ((std::uint64_t(1) << pbs_beams) > cap)
        throw CapacityError("2^" + std::to_string(pbs_beams) +
                            " masks exceed the enumeration cap of " + std::to_string(cap));
}

} // namespace

EnergyVector energy_features(const SensingBlock &block)
{
    if (block.num_samples < 1)
        throw ConfigError("sensing block must hold at least one sample");
    const auto &kern = kernels::table();
    EnergyVector v(block.num_beams, 0.0);
    for (int j = 0; j < block.num_freqs; ++j)
        for (int l = 0; l < block.num_beams; ++l)
        {
            const auto *run = &block.samples[(std::size_t(j) * block.num_beams + l) *
                                             block.num_samples];
            v[l] += kern.sum_abs2(run, std::size_t(block.num_samples));
        }
    for (auto &e : v)
        e /= block.num_samples;
    return v;
}

EnergyVector exact_signature(const Scenario &scenario, const BsBsChannels &channels,
                             const BeamMask &pbs_mask)
{
    if (pbs_mask.owner() != Station::pbs || pbs_mask.size() != scenario.pbs_cfg.num_beams)
        throw ConfigError("mask does not belong to the scenario's PBS");
    const int L = channels.num_rx;
    EnergyVector g(L, 0.0);
    for (int k = 0; k < channels.num_tx; ++k)
    {
        if (!pbs_mask.test(k))
            continue;
        for (int j = 0; j < channels.num_freqs; ++j)
            for (int l = 0; l < L; ++l)
                g[l] += scenario.pbs_power * std::norm(channels.at(j, k, l));
    }
    for (int l = 0; l < L; ++l)
        g[l] += scenario.noise_power;
    return g;
}

EnergyVector exact_signature(const Scenario &scenario, const BeamMask &pbs_mask)
{
    return exact_signature(scenario, BsBsChannels::from_scenario(scenario), pbs_mask);
}

SignatureTable SignatureTable::exact(const Scenario &scenario, std::uint64_t enumeration_cap)
{
    check_enumeration(scenario.pbs_cfg.num_beams, enumeration_cap);
    const auto channels = BsBsChannels::from_scenario(scenario);
    const int B = scenario.pbs_cfg.num_beams;
    const int L = scenario.sbs_cfg.num_beams;

    SignatureTable table;
    table.pbs_beams_ = B;
    table.sbs_beams_ = L;
    table.mode_ = Mode::exact;
    table.data_.assign((std::size_t(1) << B) * L, 0.0);

    // Per-beam energy contributions; each mask is then a subset sum.
    std::vector<double> per_beam(std::size_t(B) * L, 0.0);
    for (int k = 0; k < B; ++k)
        for (int j = 0; j < channels.num_freqs; ++j)
            for (int l = 0; l < L; ++l)
                per_beam[std::size_t(k) * L + l] +=
                    scenario.pbs_power * std::norm(channels.at(j, k, l));

    for (std::uint32_t mask = 0; mask < table.num_masks(); ++mask)
    {
        double *row = table.data_.data() + std::size_t(mask) * L;
        for (int l = 0; l < L; ++l)
            row[l] = scenario.noise_power;
        for (int k = 0; k < B; ++k)
            if ((mask >> k) & 1u)
                for (int l = 0; l < L; ++l)
                    row[l] += per_beam[std::size_t(k) * L + l];
    }
    return table;
}

SignatureTable SignatureTable::learned(const Scenario &scenario, int frames_per_mask,
                                       int samples_per_frame, std::uint64_t seed,
                                       std::uint64_t enumeration_cap)
{
    if (frames_per_mask < 1)
        throw ConfigError("frames_per_mask must be >= 1");
    check_enumeration(scenario.pbs_cfg.num_beams, enumeration_cap);
    const auto channels = BsBsChannels::from_scenario(scenario);
    const int B = scenario.pbs_cfg.num_beams;
    const int L = scenario.sbs_cfg.num_beams;

    SignatureTable table;
    table.pbs_beams_ = B;
    table.sbs_beams_ = L;
    table.mode_ = Mode::learned;
    table.data_.assign((std::size_t(1) << B) * L, 0.0);

    // The offline phase can label frames with the true mask, so each mask is
    // learned from its own substream of frames. Measured energies sum noise
    // over all F bins while the signature definition carries a single noise
    // term; the known floor (F - 1) * sigma2_noise is removed so the learned
    // table converges to the exact one.
    const double extra_noise = (scenario.grid.count - 1) * scenario.noise_power;
    for (std::uint32_t mask = 0; mask < table.num_masks(); ++mask)
    {
        Rng rng(substream_seed(seed, mask));
        const BeamMask pbs_mask(Station::pbs, B, mask);
        double *row = table.data_.data() + std::size_t(mask) * L;
        for (int frame = 0; frame < frames_per_mask; ++frame)
        {
            const auto block =
                synthesize_sensing_samples(scenario, channels, pbs_mask, samples_per_frame, rng);
            const auto v = energy_features(block);
            for (int l = 0; l < L; ++l)
                row[l] += v[l];
        }
        for (int l = 0; l < L; ++l)
            row[l] = std::max(0.0, row[l] / frames_per_mask - extra_noise);
    }
    return table;
}

void SignatureTable::save(std::ostream &os) const
{
    os << "# crcoex signature table: mask_hex g_1 ... g_" << sbs_beams_ << "\n";
    char buf[40];
    for (std::uint32_t mask = 0; mask < num_masks(); ++mask)
    {
        std::snprintf(buf, sizeof buf, "%" PRIx32, mask);
        os << buf;
        const auto row = signature(mask);
        for (const double g : row)
        {
            std::snprintf(buf, sizeof buf, " %.17g", g);
            os << buf;
        }
        os << "\n";
    }
}

SignatureTable SignatureTable::load(std::istream &is)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    long line_no = 0;
    int sbs_beams = -1;
    while (std::getline(is, line))
    {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::string mask_hex;
        if (!(ss >> mask_hex))
            continue; // blank or comment-only line
        std::uint32_t mask = 0;
        try
        {
            std::size_t pos = 0;
            const unsigned long parsed = std::stoul(mask_hex, &pos, 16);
            if (pos != mask_hex.size() || parsed > 0xFFFFFu)
                throw std::invalid_argument("range");
            mask = std::uint32_t(parsed);
        }
        catch (const std::exception &)
        {
            throw ParseError("bad mask '" + mask_hex + "' in signature table", line_no);
        }
        std::vector<double> g;
        double value = 0.0;
        while (ss >> value)
        {
            if (!(value >= 0.0))
                throw ParseError("signature energies must be >= 0", line_no);
            g.push_back(value);
        }
        if (!ss.eof())
            throw ParseError("malformed energy value in signature table", line_no);
        if (g.empty())
            throw ParseError("signature row holds no energies", line_no);
        if (sbs_beams < 0)
            sbs_beams = int(g.size());
        else if (int(g.size()) != sbs_beams)
            throw ParseError("inconsistent energy-vector length", line_no);
        if (mask != rows.size())
            throw ParseError("signature rows must cover masks densely in order", line_no);
        rows.push_back(std::move(g));
    }
    if (rows.empty() || !std::has_single_bit(rows.size()))
        throw ConfigError("signature table must cover all 2^B masks");

    SignatureTable table;
    table.pbs_beams_ = std::countr_zero(rows.size());
    table.sbs_beams_ = sbs_beams;
    table.mode_ = Mode::learned;
    table.data_.reserve(rows.size() * sbs_beams);
    for (const auto &row : rows)
        table.data_.insert(table.data_.end(), row.begin(), row.end());
    return table;
}

BeamMask ml_detect(const EnergyVector &x, const SignatureTable &table)
{
    if (int(x.size()) != table.sbs_beams())
        throw ConfigError("energy vector length does not match the table");
    const std::uint32_t masks = table.num_masks();
    const int L = table.sbs_beams();

    std::vector<double> dist(masks);
    kernels::table().sq_dist_rows(x.data(), table.data(), masks, std::size_t(L), dist.data());

    // Ascending encoding: an equal-distance candidate wins only on lower
    // popcount, which also settles the encoding tie rule.
    std::uint32_t best = 0;
    for (std::uint32_t mask = 1; mask < masks; ++mask)
    {
        if (dist[mask] < dist[best] ||
            (dist[mask] == dist[best] && std::popcount(mask) < std::popcount(best)))
            best = mask;
    }
    return {Station::pbs, table.pbs_beams(), best};
}

bool detect_presence(const EnergyVector &x, const SignatureTable &table)
{
    return ml_detect(x, table).any();
}

} // namespace crcoex
