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
// Time-slotted base-station behavior: per-interval beam activity masks,
// UE-to-beam association by small-scale averaged gain, synthesis of the
// sensing samples the SBS observes, and PBS transmit-power calibration.

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <vector>

#include "crcoex/channel.hpp"
#include "crcoex/rng.hpp"

namespace crcoex
{

enum class Station : std::uint8_t
{
    pbs,
    sbs
};

/// Fixed-length ON/OFF vector of a station's beams in one interval,
/// encoded densely in [0, 2^B).
class BeamMask
{
  public:
    BeamMask() = default;
    BeamMask(Station owner, int num_beams, std::uint32_t bits = 0);

    static BeamMask all_off(Station owner, int num_beams) { return {owner, num_beams, 0}; }
    static BeamMask all_on(Station owner, int num_beams);

    bool test(int k) const { return (bits_ >> k) & 1u; }
    void set(int k, bool value = true);

    int size() const { return size_; }
    Station owner() const { return owner_; }
    std::uint32_t value() const { return bits_; }
    int popcount() const { return std::popcount(bits_); }
    bool any() const { return bits_ != 0; }
    bool none() const { return bits_ == 0; }

    friend bool operator==(const BeamMask &, const BeamMask &) = default;

  private:
    std::uint32_t bits_ = 0;
    int size_ = 0;
    Station owner_ = Station::pbs;
};

/// Per-UE serving-beam indices for both stations (argmax of mean path gain,
/// ties to the lowest index).
struct Association
{
    std::vector<int> pbs_beam;
    std::vector<int> sbs_beam;
};

/// Complex SBS receive samples of one sensing sub-interval, indexed
/// (frequency j, SBS beam l, sample n); stored [j][l][n]. The true PBS mask
/// is evaluation bookkeeping only - the detector never reads it.
struct SensingBlock
{
    int num_freqs = 0;
    int num_beams = 0;
    int num_samples = 0;
    std::vector<std::complex<double>> samples;
    BeamMask true_mask;

    std::complex<double> &at(int j, int l, int n)
    {
        return samples[(std::size_t(j) * num_beams + l) * num_samples + n];
    }
    const std::complex<double> &at(int j, int l, int n) const
    {
        return samples[(std::size_t(j) * num_beams + l) * num_samples + n];
    }
};

/// Precomputed PBS-beam -> SBS-beam transfer functions on the grid, laid out
/// for the mixing kernel: for fixed (j, k) the values over l are contiguous.
struct BsBsChannels
{
    int num_freqs = 0;
    int num_tx = 0; ///< B_PBS
    int num_rx = 0; ///< B_SBS
    std::vector<std::complex<double>> h; ///< [j][k][l]

    static BsBsChannels from_scenario(const Scenario &scenario);

    const std::complex<double> *freq_block(int j) const
    {
        return h.data() + std::size_t(j) * num_tx * num_rx;
    }
    std::complex<double> at(int j, int k, int l) const
    {
        return h[(std::size_t(j) * num_tx + k) * num_rx + l];
    }
};

/// Associate every UE with its best PBS and SBS beam.
Association associate_ues(const Scenario &scenario);

/// Draw a PBS activity mask with i.i.d. Bernoulli(p_on) bits.
BeamMask sample_pbs_activity(double p_on, int num_beams, Rng &rng);

/// Synthesize the SBS sensing observation for one interval: every active PBS
/// beam transmits i.i.d. circular complex Gaussian symbols (shared across
/// all SBS beams, which sample simultaneously), mixed through the BS-to-BS
/// channels, plus receiver noise.
SensingBlock synthesize_sensing_samples(const Scenario &scenario, const BsBsChannels &channels,
                                        const BeamMask &pbs_mask, int num_samples, Rng &rng);

/// Convenience overload computing the channel matrix on the fly.
SensingBlock synthesize_sensing_samples(const Scenario &scenario, const BeamMask &pbs_mask,
                                        int num_samples, Rng &rng);

/// PBS transmit power that gives the worst-served UE exactly `target_snr`
/// (linear) on its associated beam.
double calibrate_pbs_power(const Scenario &scenario, const Association &assoc,
                           double target_snr);

} // namespace crcoex
