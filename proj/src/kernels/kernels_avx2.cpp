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
// AVX2+FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; it must stay free of inline helpers shared with
// non-AVX2 code. Results may differ from the scalar references by summation
// order only.

#include "crcoex/kernels.hpp"

#if defined(CRCOEX_HAVE_AVX2) && defined(__AVX2__)

#include <array>
#include <immintrin.h>

namespace crcoex::kernels
{
namespace
{

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    const __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double sum_abs2_avx2(const std::complex<double> *z, std::size_t n)
{
    const double *p = reinterpret_cast<const double *>(z);
    const std::size_t m = 2 * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8)
    {
        const __m256d v0 = _mm256_loadu_pd(p + i);
        const __m256d v1 = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 4 <= m; i += 4)
    {
        const __m256d v = _mm256_loadu_pd(p + i);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double out = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < m; ++i)
        out += p[i] * p[i];
    return out;
}

double sq_dist_avx2(const double *a, const double *b, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i)
    {
        const double d = a[i] - b[i];
        out += d * d;
    }
    return out;
}

void sq_dist_rows_avx2(const double *x, const double *table, std::size_t rows,
                       std::size_t cols, double *out)
{
    for (std::size_t r = 0; r < rows; ++r)
        out[r] = sq_dist_avx2(x, table + r * cols, cols);
}

// Per-nibble load masks for maskload: lane b is all-ones iff bit b is set.
constexpr std::array<std::array<std::uint64_t, 4>, 16> make_nibble_masks()
{
    std::array<std::array<std::uint64_t, 4>, 16> lut{};
    for (unsigned nib = 0; nib < 16; ++nib)
        for (unsigned lane = 0; lane < 4; ++lane)
            lut[nib][lane] = (nib >> lane) & 1u ? ~std::uint64_t(0) : 0;
    return lut;
}
alignas(32) constexpr auto kNibbleMasks = make_nibble_masks();

double masked_sum_avx2(const double *w, std::uint32_t mask, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    const std::size_t chunks = n / 4;
    for (std::size_t c = 0; c < chunks; ++c)
    {
        const std::uint32_t nib = (mask >> (4 * c)) & 0xFu;
        if (!nib)
            continue;
        const __m256i mv =
            _mm256_load_si256(reinterpret_cast<const __m256i *>(kNibbleMasks[nib].data()));
        acc = _mm256_add_pd(acc, _mm256_maskload_pd(w + 4 * c, mv));
    }
    double out = hsum(acc);
    for (std::size_t k = 4 * chunks; k < n; ++k)
        if (mask & (std::uint32_t(1) << k))
            out += w[k];
    return out;
}

std::size_t count_below_avx2(const double *x, std::size_t n, double threshold)
{
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        const __m256d cmp = _mm256_cmp_pd(_mm256_loadu_pd(x + i), t, _CMP_LT_OQ);
        count += std::size_t(__builtin_popcount(unsigned(_mm256_movemask_pd(cmp))));
    }
    for (; i < n; ++i)
        count += x[i] < threshold ? 1 : 0;
    return count;
}

void cmatvec_acc_avx2(const std::complex<double> *h_cols, std::size_t ld,
                      const std::int32_t *idx, std::size_t n_idx,
                      const std::complex<double> *s, std::complex<double> *r, std::size_t len)
{
    const double *H = reinterpret_cast<const double *>(h_cols);
    const double *S = reinterpret_cast<const double *>(s);
    double *R = reinterpret_cast<double *>(r);

    std::size_t l = 0;
    for (; l + 2 <= len; l += 2) // two complex values per 256-bit register
    {
        __m256d acc = _mm256_loadu_pd(R + 2 * l);
        for (std::size_t a = 0; a < n_idx; ++a)
        {
            const double *col = H + 2 * (std::size_t(idx[a]) * ld + l);
            const __m256d h = _mm256_loadu_pd(col);
            const __m256d sre = _mm256_broadcast_sd(S + 2 * a);
            const __m256d sim = _mm256_broadcast_sd(S + 2 * a + 1);
            const __m256d hswap = _mm256_permute_pd(h, 0x5);
            // even lanes: h.re*s.re - h.im*s.im; odd lanes: h.im*s.re + h.re*s.im
            acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(h, sre, _mm256_mul_pd(hswap, sim)));
        }
        _mm256_storeu_pd(R + 2 * l, acc);
    }
    for (; l < len; ++l)
    {
        double re = R[2 * l], im = R[2 * l + 1];
        for (std::size_t a = 0; a < n_idx; ++a)
        {
            const double *col = H + 2 * (std::size_t(idx[a]) * ld + l);
            re += col[0] * S[2 * a] - col[1] * S[2 * a + 1];
            im += col[1] * S[2 * a] + col[0] * S[2 * a + 1];
        }
        R[2 * l] = re;
        R[2 * l + 1] = im;
    }
}

} // namespace

const Dispatch &avx2_table()
{
    static const Dispatch t = {"avx2",           sum_abs2_avx2,    sq_dist_avx2,
                               sq_dist_rows_avx2, masked_sum_avx2, count_below_avx2,
                               cmatvec_acc_avx2};
    return t;
}

} // namespace crcoex::kernels

#endif // CRCOEX_HAVE_AVX2 && __AVX2__
