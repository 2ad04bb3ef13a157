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

#include "crcoex/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace crcoex
{

namespace
{
constexpr double kPi = std::numbers::pi;

void check_beam_index(int beam, const BeamConfig &cfg, const char *what)
{
    if (beam < 0 || beam >= cfg.num_beams)
        throw ConfigError(std::string(what) + " beam index " + std::to_string(beam) +
                          " out of range [0, " + std::to_string(cfg.num_beams) + ")");
}
} // namespace

void MultipathComponent::validate() const
{
    if (!(gain_mag >= 0.0) || !std::isfinite(gain_mag))
        throw ConfigError("MPC gain magnitude must be finite and >= 0");
    if (!(delay >= 0.0) || !std::isfinite(delay))
        throw ConfigError("MPC delay must be finite and >= 0");
    if (!std::isfinite(phase) || !std::isfinite(dod) || (doa && !std::isfinite(*doa)))
        throw ConfigError("MPC angles and phase must be finite");
}

BeamConfig BeamConfig::fourier(int num_beams)
{
    if (num_beams < 1)
        throw ConfigError("num_beams must be >= 1");
    BeamConfig cfg;
    cfg.num_beams = num_beams;
    cfg.steer_angles.resize(num_beams);
    // Equally spaced in cos-space, half-step offset; acos of a descending
    // cosine list yields strictly increasing angles.
    for (int k = 0; k < num_beams; ++k)
    {
        const double c = 1.0 - (2.0 * k + 1.0) / num_beams;
        cfg.steer_angles[k] = std::acos(c);
    }
    return cfg;
}

void BeamConfig::validate() const
{
    if (num_beams < 1)
        throw ConfigError("num_beams must be >= 1");
    if (int(steer_angles.size()) != num_beams)
        throw ConfigError("steer_angles length must equal num_beams");
    for (int k = 0; k < num_beams; ++k)
    {
        if (!std::isfinite(steer_angles[k]))
            throw ConfigError("steering angles must be finite");
        if (k > 0 && !(steer_angles[k] > steer_angles[k - 1]))
            throw ConfigError("steering angles must be strictly increasing");
    }
}

FrequencyGrid FrequencyGrid::centered(double carrier_hz, double bandwidth_hz, int count)
{
    if (count < 1)
        throw ConfigError("frequency count must be >= 1");
    if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0))
        throw ConfigError("carrier and bandwidth must be positive");
    FrequencyGrid grid;
    grid.carrier_hz = carrier_hz;
    grid.bandwidth_hz = bandwidth_hz;
    grid.count = count;
    grid.frequencies.resize(count);
    for (int j = 0; j < count; ++j)
        grid.frequencies[j] = carrier_hz - bandwidth_hz / 2.0 +
                              (j + 0.5) * bandwidth_hz / count;
    return grid;
}

void FrequencyGrid::validate() const
{
    if (count < 1 || int(frequencies.size()) != count)
        throw ConfigError("frequency grid count mismatch");
    if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0))
        throw ConfigError("carrier and bandwidth must be positive");
    const double lo = carrier_hz - bandwidth_hz / 2.0;
    const double hi = carrier_hz + bandwidth_hz / 2.0;
    const double tol = 1e-9 * bandwidth_hz;
    const double step = count > 1 ? frequencies[1] - frequencies[0] : 0.0;
    for (int j = 0; j < count; ++j)
    {
        if (frequencies[j] < lo - tol || frequencies[j] > hi + tol)
            throw ConfigError("grid frequency outside the band");
        if (j > 0 && std::abs((frequencies[j] - frequencies[j - 1]) - step) > tol)
            throw ConfigError("grid frequencies must be equally spaced");
    }
}

void Scenario::validate() const
{
    pbs_cfg.validate();
    sbs_cfg.validate();
    grid.validate();
    if (!(pbs_power > 0.0) || !(noise_power > 0.0))
        throw ConfigError("pbs_power and noise_power must be strictly positive");
    if (!(sbs_power >= 0.0))
        throw ConfigError("sbs_power must be >= 0");
    if (!(sinr_threshold > 0.0))
        throw ConfigError("sinr_threshold must be positive");
    if (!(violation_cap >= 0.0) || !(violation_cap <= 1.0))
        throw ConfigError("violation_cap must lie in [0, 1]");
    const std::size_t u = ue_positions.size();
    if (pbs_to_ue_mpcs.size() != u || sbs_to_ue_mpcs.size() != u)
        throw ConfigError("per-UE MPC lists must match the UE count");
    for (const auto &mpc : pbs_to_sbs_mpcs)
    {
        mpc.validate();
        if (!mpc.doa)
            throw ConfigError("BS-to-BS MPCs require an arrival angle");
    }
    for (const auto &link : pbs_to_ue_mpcs)
        for (const auto &mpc : link)
            mpc.validate();
    for (const auto &link : sbs_to_ue_mpcs)
        for (const auto &mpc : link)
            mpc.validate();
}

double fold_azimuth(double angle)
{
    double a = std::fmod(std::abs(angle), 2.0 * kPi);
    if (a > kPi)
        a = 2.0 * kPi - a;
    if (a >= kPi) // fold the single boundary point into the half-open range
        a = std::nextafter(kPi, 0.0);
    return a;
}

std::complex<double> beam_pattern(double steer_angle, int num_beams, double angle)
{
    const double delta = std::cos(angle) - std::cos(steer_angle);
    std::complex<double> acc(0.0, 0.0);
    for (int n = 1; n <= num_beams; ++n)
        acc += std::polar(1.0, n * kPi * delta);
    return acc;
}

std::complex<double> bs_to_bs_channel(std::span<const MultipathComponent> mpcs, int tx_beam,
                                      int rx_beam, double freq_hz, const BeamConfig &tx_cfg,
                                      const BeamConfig &rx_cfg)
{
    check_beam_index(tx_beam, tx_cfg, "tx");
    check_beam_index(rx_beam, rx_cfg, "rx");
    std::complex<double> h(0.0, 0.0);
    for (const auto &mpc : mpcs)
    {
        if (!mpc.doa)
            throw ConfigError("BS-to-BS channel requires arrival angles on every MPC");
        const std::complex<double> weight =
            std::polar(mpc.gain_mag, mpc.phase - 2.0 * kPi * mpc.delay * freq_hz);
        h += weight * beam_pattern(tx_cfg.steer_angles[tx_beam], tx_cfg.num_beams, mpc.dod) *
             beam_pattern(rx_cfg.steer_angles[rx_beam], rx_cfg.num_beams, *mpc.doa);
    }
    return h;
}

std::complex<double> bs_to_ue_channel(std::span<const MultipathComponent> mpcs, int tx_beam,
                                      double freq_hz, const BeamConfig &tx_cfg)
{
    check_beam_index(tx_beam, tx_cfg, "tx");
    std::complex<double> h(0.0, 0.0);
    for (const auto &mpc : mpcs)
    {
        const std::complex<double> weight =
            std::polar(mpc.gain_mag, mpc.phase - 2.0 * kPi * mpc.delay * freq_hz);
        h += weight * beam_pattern(tx_cfg.steer_angles[tx_beam], tx_cfg.num_beams, mpc.dod);
    }
    return h;
}

double mean_path_gain(std::span<const MultipathComponent> mpcs, int tx_beam,
                      const BeamConfig &tx_cfg, const FrequencyGrid &grid)
{
    check_beam_index(tx_beam, tx_cfg, "tx");
    double acc = 0.0;
    for (const double f : grid.frequencies)
        acc += std::norm(bs_to_ue_channel(mpcs, tx_beam, f, tx_cfg));
    return acc / grid.count;
}

} // namespace crcoex
