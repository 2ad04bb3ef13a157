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
// Seedable random number generation with explicit algorithms so that runs are
// bit-reproducible across compilers and standard libraries. Monte-Carlo
// intervals, learning frames and sweep cells each draw from an independent
// substream derived from (master seed, index) - see substream_seed().

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace crcoex
{

/// splitmix64; used for seeding and substream derivation.
struct SplitMix64
{
    std::uint64_t state;

    constexpr std::uint64_t next() noexcept
    {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ (Blackman & Vigna, public domain), seeded via splitmix64.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) noexcept
    {
        SplitMix64 sm{seed};
        for (auto &w : s_)
            w = sm.next();
    }

    std::uint64_t next() noexcept
    {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform01() noexcept { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

    /// Standard normal via Box-Muller.
    double normal() noexcept
    {
        const double u1 = 1.0 - uniform01(); // (0,1], keeps the log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Exponential with the given mean.
    double exponential(double mean) noexcept { return -mean * std::log(1.0 - uniform01()); }

    /// Poisson via inversion by sequential search (fine for small means).
    int poisson(double mean) noexcept
    {
        const double limit = std::exp(-mean);
        double prod = uniform01();
        int k = 0;
        while (prod > limit)
        {
            prod *= uniform01();
            ++k;
        }
        return k;
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance
    /// (real and imaginary parts independent N(0, variance/2)).
    std::complex<double> complex_normal(double variance) noexcept
    {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-variance * std::log(u1));
        return std::polar(mag, 2.0 * std::numbers::pi * u2);
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

/// Deterministic substream seed: mixes up to two indices into a master seed.
/// Streams for distinct (a, b) are statistically independent for all
/// practical purposes.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0)
{
    SplitMix64 s0{master};
    SplitMix64 s1{s0.next() ^ (0x9E3779B97F4A7C15ULL * (a + 1))};
    SplitMix64 s2{s1.next() ^ (0xC2B2AE3D27D4EB4FULL * (b + 1))};
    return s2.next();
}

} // namespace crcoex
