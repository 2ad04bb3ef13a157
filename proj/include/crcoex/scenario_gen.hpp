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
// Synthetic multipath scenario generator: a stand-in for externally
// ray-traced channels. Every link gets a deterministic LOS path along the
// geometry plus a Poisson number of scattered paths with exponential excess
// delays, exponentially decaying power and Gaussian-perturbed angles.
// Fully deterministic given (params, seed). Ray-traced channels can be fed
// in instead through the MPC text format (see mpc_io.hpp).

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crcoex/channel.hpp"

namespace crcoex
{

struct GenParams
{
    // Beam layout; empty steer-angle lists mean Fourier (DFT) sectors.
    int pbs_beams = 8;
    int sbs_beams = 8;
    std::vector<double> pbs_steer_angles;
    std::vector<double> sbs_steer_angles;

    // Frequency plan.
    double carrier_hz = 2.5e9;
    double bandwidth_hz = 1e6;
    int freq_count = 16;

    // Geometry (meters). UEs are dropped uniformly in the rectangle,
    // rejecting points closer than min_distance to either station.
    std::array<double, 2> pbs_pos{0.0, 0.0};
    std::array<double, 2> sbs_pos{120.0, 90.0};
    std::array<double, 4> ue_region{-250.0, 250.0, -250.0, 250.0}; ///< x0 x1 y0 y1
    int num_ues = 100;
    double min_distance = 10.0;
    std::vector<std::array<double, 2>> explicit_ue_positions; ///< overrides the drop

    // Propagation. LOS amplitude is d^(-pathloss_exp/2) (1 m reference);
    // scattered paths: count ~ Poisson(scatter_mean) clamped to scatter_max,
    // excess delay ~ Exp(delay_spread_s), power scaled by scatter_rel_pow *
    // exp(-excess/delay_spread_s), angles perturbed by N(0, angle_spread_rad).
    // UE links are LOS-dominant; the elevated BS-to-BS link gets its own,
    // much richer scattering so every PBS beam couples measurably into the
    // SBS array (bs_* knobs).
    double pathloss_exp = 2.0;
    double scatter_mean = 4.0;
    int scatter_max = 10;
    double delay_spread_s = 2e-7;
    double angle_spread_rad = 0.12;
    double scatter_rel_pow = 0.1;
    double bs_scatter_mean = 32.0;
    int bs_scatter_max = 48;
    double bs_angle_spread_rad = 1.8;
    double bs_scatter_rel_pow = 2.0;

    // Initial powers and constraint numbers carried into the Scenario;
    // pbs_power is typically recalibrated afterwards.
    double noise_power_mw = 1e-9;
    double pbs_power_mw = 1.0;
    double sbs_power_mw = 0.0;
    double sinr_threshold = 2.0;
    double violation_cap = 0.1;

    friend bool operator==(const GenParams &, const GenParams &) = default;
};

/// Deterministic synthetic scenario; throws ConfigError on an empty region,
/// zero UEs or otherwise inconsistent parameters.
Scenario generate_synthetic_scenario(const GenParams &params, std::uint64_t seed);

} // namespace crcoex
