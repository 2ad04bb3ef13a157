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
// Energy-signature sensing. Offline, the SBS builds a table mapping every
// PBS beam mask to its expected per-SBS-beam energy vector (analytically or
// by averaging observed frames); online, it detects the active mask as the
// table entry closest in squared Euclidean distance to the measured
// energies. The table is dense over all 2^B_PBS masks, as the detector is an
// exhaustive scan; B_PBS is capped accordingly.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "crcoex/radio_env.hpp"

namespace crcoex
{

/// Per-SBS-beam measured (or expected) energies, length B_SBS.
using EnergyVector = std::vector<double>;

/// Default cap on dense 2^B enumerations (masks), both for signature tables
/// and for the beam-selection search.
inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t(1) << 20;

/// Measured energy feature vector of one sensing block:
/// v_l = (1/N) sum_n sum_j |r_{j,l,n}|^2.
EnergyVector energy_features(const SensingBlock &block);

/// Expected energy vector for one PBS mask:
/// g_l = sum_k sum_j b_k sigma2_PBS |h_{j,k,l}|^2 + sigma2_noise.
EnergyVector exact_signature(const Scenario &scenario, const BsBsChannels &channels,
                             const BeamMask &pbs_mask);
EnergyVector exact_signature(const Scenario &scenario, const BeamMask &pbs_mask);

/// Dense mask -> energy-signature map over all 2^B_PBS masks.
class SignatureTable
{
  public:
    SignatureTable() = default; ///< empty table; fill via exact()/learned()/load()

    enum class Mode
    {
        exact,
        learned
    };

    /// Analytic table from the scenario's channel matrix.
    static SignatureTable exact(const Scenario &scenario,
                                std::uint64_t enumeration_cap = kDefaultEnumCap);

    /// Offline-phase table: for each mask, average the energy features of
    /// `frames_per_mask` synthesized sensing blocks of `samples_per_frame`
    /// samples each. Converges to the exact table as frames grow.
    static SignatureTable learned(const Scenario &scenario, int frames_per_mask,
                                  int samples_per_frame, std::uint64_t seed,
                                  std::uint64_t enumeration_cap = kDefaultEnumCap);

    int pbs_beams() const { return pbs_beams_; }
    int sbs_beams() const { return sbs_beams_; }
    std::uint32_t num_masks() const { return std::uint32_t(1) << pbs_beams_; }
    Mode mode() const { return mode_; }

    std::span<const double> signature(std::uint32_t mask_bits) const
    {
        return {data_.data() + std::size_t(mask_bits) * sbs_beams_, std::size_t(sbs_beams_)};
    }
    const double *data() const { return data_.data(); }

    /// Text form: one line per mask, `mask_hex g_1 ... g_B_SBS`.
    void save(std::ostream &os) const;
    static SignatureTable load(std::istream &is);

    friend bool operator==(const SignatureTable &, const SignatureTable &) = default;

  private:
    int pbs_beams_ = 0;
    int sbs_beams_ = 0;
    Mode mode_ = Mode::exact;
    std::vector<double> data_; ///< [mask][l]
};

/// Maximum-likelihood mask detection: the table entry minimizing
/// ||x - g(B)||^2. Ties break to the lower popcount, then the lower
/// integer encoding.
BeamMask ml_detect(const EnergyVector &x, const SignatureTable &table);

/// Directionless presence flag: true iff the detected mask is not all-zero.
bool detect_presence(const EnergyVector &x, const SignatureTable &table);

} // namespace crcoex
