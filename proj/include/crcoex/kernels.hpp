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
// Arithmetic inner-loop kernels used by the sensing synthesizer, the energy
// detector and the beam-selection enumerator. Every kernel has a scalar
// reference implementation and (on x86-64) an AVX2+FMA variant; the active
// variant is chosen at runtime from CPU features and can be pinned with
// select_backend(). The AVX2 variants are equivalence-tested against the
// scalar references.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace crcoex::kernels
{

/// Function-pointer table for one backend.
struct Dispatch
{
    const char *name;

    /// sum_i |z_i|^2
    double (*sum_abs2)(const std::complex<double> *z, std::size_t n);

    /// sum_i (a_i - b_i)^2
    double (*sq_dist)(const double *a, const double *b, std::size_t n);

    /// out[r] = squared distance from x to row r of a dense [rows x cols] table
    void (*sq_dist_rows)(const double *x, const double *table, std::size_t rows,
                         std::size_t cols, double *out);

    /// sum of w[k] over the set bits of mask (n <= 32)
    double (*masked_sum)(const double *w, std::uint32_t mask, std::size_t n);

    /// number of entries with x_i < threshold
    std::size_t (*count_below)(const double *x, std::size_t n, double threshold);

    /// r[l] += sum_a s[a] * h_cols[idx[a]*ld + l] for l in [0, len)
    /// (complex matrix stored as contiguous columns of length ld)
    void (*cmatvec_acc)(const std::complex<double> *h_cols, std::size_t ld,
                        const std::int32_t *idx, std::size_t n_idx,
                        const std::complex<double> *s, std::complex<double> *r,
                        std::size_t len);
};

/// Currently active backend (hot loops may cache the reference).
const Dispatch &table();

/// Name of the active backend: "scalar" or "avx2".
std::string_view backend_name();

/// Pin the backend: "scalar", "avx2" or "auto". Returns false (and leaves the
/// selection unchanged) if the requested backend is unavailable on this CPU.
bool select_backend(std::string_view name);

/// True if the AVX2 variant can run on this machine.
bool avx2_available();

/// Scalar reference table, always available (used by equivalence tests).
const Dispatch &scalar_table();

#if defined(CRCOEX_HAVE_AVX2)
/// AVX2 table; only call through it when avx2_available() is true.
const Dispatch &avx2_table();
#endif

// Convenience forwarders through the active backend.
inline double sum_abs2(const std::complex<double> *z, std::size_t n)
{
    return table().sum_abs2(z, n);
}
inline double sq_dist(const double *a, const double *b, std::size_t n)
{
    return table().sq_dist(a, b, n);
}
inline void sq_dist_rows(const double *x, const double *tab, std::size_t rows, std::size_t cols,
                         double *out)
{
    table().sq_dist_rows(x, tab, rows, cols, out);
}
inline double masked_sum(const double *w, std::uint32_t mask, std::size_t n)
{
    return table().masked_sum(w, mask, n);
}
inline std::size_t count_below(const double *x, std::size_t n, double threshold)
{
    return table().count_below(x, n, threshold);
}
inline void cmatvec_acc(const std::complex<double> *h_cols, std::size_t ld,
                        const std::int32_t *idx, std::size_t n_idx,
                        const std::complex<double> *s, std::complex<double> *r, std::size_t len)
{
    table().cmatvec_acc(h_cols, ld, idx, n_idx, s, r, len);
}

} // namespace crcoex::kernels
