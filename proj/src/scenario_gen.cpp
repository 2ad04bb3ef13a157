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

#include "crcoex/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "crcoex/rng.hpp"

namespace crcoex
{

namespace
{

constexpr double kSpeedOfLight = 299792458.0;

double distance(const std::array<double, 2> &a, const std::array<double, 2> &b)
{
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double azimuth(const std::array<double, 2> &from, const std::array<double, 2> &to)
{
    return fold_azimuth(std::atan2(to[1] - from[1], to[0] - from[0]));
}

BeamConfig make_config(int num_beams, const std::vector<double> &steer_angles)
{
    if (steer_angles.empty())
        return BeamConfig::fourier(num_beams);
    BeamConfig cfg;
    cfg.num_beams = num_beams;
    cfg.steer_angles = steer_angles;
    cfg.validate();
    return cfg;
}

struct LinkScatter
{
    double mean;
    int max;
    double rel_pow;
    double angle_spread;
};

/// LOS + scattered paths for one link. Arrival angles are generated only
/// for BS-to-BS links.
std::vector<MultipathComponent> make_link(const GenParams &p, const LinkScatter &scatter,
                                          const std::array<double, 2> &tx,
                                          const std::array<double, 2> &rx, bool with_doa,
                                          Rng &rng)
{
    const double d = std::max(distance(tx, rx), 1.0);
    const double los_gain = std::pow(d, -p.pathloss_exp / 2.0);
    const double los_dod = azimuth(tx, rx);
    const double los_doa = azimuth(rx, tx);

    std::vector<MultipathComponent> mpcs;
    MultipathComponent los;
    los.gain_mag = los_gain;
    los.phase = 0.0;
    los.delay = d / kSpeedOfLight;
    los.dod = los_dod;
    if (with_doa)
        los.doa = los_doa;
    mpcs.push_back(los);

    const int count = std::min(rng.poisson(scatter.mean), scatter.max);
    for (int s = 0; s < count; ++s)
    {
        const double excess = rng.exponential(p.delay_spread_s);
        MultipathComponent mpc;
        mpc.gain_mag = los_gain * std::sqrt(scatter.rel_pow *
                                            std::exp(-excess / p.delay_spread_s));
        mpc.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        mpc.delay = d / kSpeedOfLight + excess;
        mpc.dod = fold_azimuth(los_dod + scatter.angle_spread * rng.normal());
        if (with_doa)
            mpc.doa = fold_azimuth(los_doa + scatter.angle_spread * rng.normal());
        mpcs.push_back(mpc);
    }
    return mpcs;
}

} // namespace

Scenario generate_synthetic_scenario(const GenParams &p, std::uint64_t seed)
{
    if (p.num_ues < 1)
        throw ConfigError("synthetic scenario requires at least one UE");
    if (!(p.ue_region[1] > p.ue_region[0]) || !(p.ue_region[3] > p.ue_region[2]))
        throw ConfigError("UE placement region is empty");
    if (!(p.pathloss_exp > 0.0) || !(p.delay_spread_s > 0.0))
        throw ConfigError("pathloss exponent and delay spread must be positive");
    if (p.scatter_mean < 0.0 || p.scatter_max < 0 || p.bs_scatter_mean < 0.0 ||
        p.bs_scatter_max < 0)
        throw ConfigError("scatterer counts must be >= 0");
    if (!p.explicit_ue_positions.empty() && int(p.explicit_ue_positions.size()) != p.num_ues)
        throw ConfigError("explicit UE positions must match num_ues");

    Scenario sc;
    sc.pbs_cfg = make_config(p.pbs_beams, p.pbs_steer_angles);
    sc.sbs_cfg = make_config(p.sbs_beams, p.sbs_steer_angles);
    sc.grid = FrequencyGrid::centered(p.carrier_hz, p.bandwidth_hz, p.freq_count);
    sc.noise_power = p.noise_power_mw;
    sc.pbs_power = p.pbs_power_mw;
    sc.sbs_power = p.sbs_power_mw;
    sc.sinr_threshold = p.sinr_threshold;
    sc.violation_cap = p.violation_cap;

    Rng rng(seed);

    // Draw order is fixed: positions, the BS-BS link, then per-UE links.
    sc.ue_positions.reserve(p.num_ues);
    if (!p.explicit_ue_positions.empty())
    {
        sc.ue_positions = p.explicit_ue_positions;
    }
    else
    {
        for (int u = 0; u < p.num_ues; ++u)
        {
            std::array<double, 2> pos{};
            int attempts = 0;
            do
            {
                if (++attempts > 10000)
                    throw ConfigError("could not place UE " + std::to_string(u) +
                                      " outside min_distance; region too small");
                pos = {rng.uniform(p.ue_region[0], p.ue_region[1]),
                       rng.uniform(p.ue_region[2], p.ue_region[3])};
            } while (distance(pos, p.pbs_pos) < p.min_distance ||
                     distance(pos, p.sbs_pos) < p.min_distance);
            sc.ue_positions.push_back(pos);
        }
    }

    const LinkScatter ue_scatter{p.scatter_mean, p.scatter_max, p.scatter_rel_pow,
                                 p.angle_spread_rad};
    const LinkScatter bs_scatter{p.bs_scatter_mean, p.bs_scatter_max, p.bs_scatter_rel_pow,
                                 p.bs_angle_spread_rad};
    sc.pbs_to_sbs_mpcs = make_link(p, bs_scatter, p.pbs_pos, p.sbs_pos, true, rng);
    sc.pbs_to_ue_mpcs.reserve(p.num_ues);
    sc.sbs_to_ue_mpcs.reserve(p.num_ues);
    for (int u = 0; u < p.num_ues; ++u)
        sc.pbs_to_ue_mpcs.push_back(
            make_link(p, ue_scatter, p.pbs_pos, sc.ue_positions[u], false, rng));
    for (int u = 0; u < p.num_ues; ++u)
        sc.sbs_to_ue_mpcs.push_back(
            make_link(p, ue_scatter, p.sbs_pos, sc.ue_positions[u], false, rng));

    sc.validate();
    return sc;
}

} // namespace crcoex
