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
// Multipath channel model: sectorized beam patterns of a uniform linear
// array, complex transfer functions assembled from multipath components, and
// the frequency-averaged path gains that drive beam association and all SINR
// computations. Angles are azimuth-only in [0, pi), the support of the
// cosine pattern; delays in seconds, frequencies in Hz, powers in mW.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "crcoex/error.hpp"

namespace crcoex
{

/// One propagation path. The arrival angle is present only on links between
/// two base stations; user terminals are omnidirectional.
struct MultipathComponent
{
    double gain_mag = 0.0;      ///< |alpha|, linear amplitude, >= 0
    double phase = 0.0;         ///< extra path phase, radians
    double delay = 0.0;         ///< seconds, >= 0
    double dod = 0.0;           ///< departure azimuth, [0, pi)
    std::optional<double> doa;  ///< arrival azimuth, [0, pi); BS-to-BS only

    void validate() const;

    friend bool operator==(const MultipathComponent &, const MultipathComponent &) = default;
};

/// Sector layout of one multi-beam base station.
struct BeamConfig
{
    int num_beams = 0;
    std::vector<double> steer_angles; ///< strictly increasing, radians

    /// Fourier (DFT) beam layout: steering angles equally spaced in
    /// cos-space with a half-step offset, the common 5G codebook choice.
    static BeamConfig fourier(int num_beams);

    void validate() const;

    friend bool operator==(const BeamConfig &, const BeamConfig &) = default;
};

/// The F equally spaced operating frequencies.
struct FrequencyGrid
{
    double carrier_hz = 0.0;
    double bandwidth_hz = 0.0;
    int count = 0;
    std::vector<double> frequencies;

    /// Centered-bin placement: f_j = carrier - BW/2 + (j - 1/2) * BW / F.
    static FrequencyGrid centered(double carrier_hz, double bandwidth_hz, int count);

    void validate() const;

    friend bool operator==(const FrequencyGrid &, const FrequencyGrid &) = default;
};

/// Full world state. Immutable after construction; safe for concurrent read.
struct Scenario
{
    BeamConfig pbs_cfg;
    BeamConfig sbs_cfg;
    FrequencyGrid grid;

    std::vector<MultipathComponent> pbs_to_sbs_mpcs;
    std::vector<std::array<double, 2>> ue_positions;
    std::vector<std::vector<MultipathComponent>> pbs_to_ue_mpcs; ///< per UE
    std::vector<std::vector<MultipathComponent>> sbs_to_ue_mpcs; ///< per UE

    double pbs_power = 1.0;       ///< sigma^2_PBS, mW (EIRP)
    double sbs_power = 0.0;       ///< sigma^2_SBS, mW (EIRP), may be zero
    double noise_power = 1.0;     ///< sigma^2_noise, mW
    double sinr_threshold = 2.0;  ///< theta, linear
    double violation_cap = 0.1;   ///< V, fraction in [0, 1]

    int num_ues() const { return int(ue_positions.size()); }

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Array pattern of the beam steered at `steer_angle` in a station with
/// `num_beams` sectors, evaluated at azimuth `angle`:
/// sum_{n=1..num_beams} exp(i n pi (cos(angle) - cos(steer_angle))).
std::complex<double> beam_pattern(double steer_angle, int num_beams, double angle);

/// Transfer function between two beamformed base stations at one frequency,
/// with departure and arrival patterns applied per path.
std::complex<double> bs_to_bs_channel(std::span<const MultipathComponent> mpcs, int tx_beam,
                                      int rx_beam, double freq_hz, const BeamConfig &tx_cfg,
                                      const BeamConfig &rx_cfg);

/// Transfer function from a beamformed base station to an omnidirectional
/// UE at one frequency (no arrival pattern factor).
std::complex<double> bs_to_ue_channel(std::span<const MultipathComponent> mpcs, int tx_beam,
                                      double freq_hz, const BeamConfig &tx_cfg);

/// Small-scale averaged path gain: (1/F) sum_j |h_j|^2 over the grid.
double mean_path_gain(std::span<const MultipathComponent> mpcs, int tx_beam,
                      const BeamConfig &tx_cfg, const FrequencyGrid &grid);

/// Project an arbitrary azimuth onto [0, pi) preserving its cosine.
double fold_azimuth(double angle);

} // namespace crcoex
