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
// Scalar reference kernels. These define the semantics; the SIMD variants
// must agree with them to floating-point reassociation accuracy.

#include "crcoex/kernels.hpp"

namespace crcoex::kernels
{
namespace
{

double sum_abs2_scalar(const std::complex<double> *z, std::size_t n)
{
    const double *p = reinterpret_cast<const double *>(z);
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i)
        acc += p[i] * p[i];
    return acc;
}

double sq_dist_scalar(const double *a, const double *b, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void sq_dist_rows_scalar(const double *x, const double *table, std::size_t rows,
                         std::size_t cols, double *out)
{
    for (std::size_t r = 0; r < rows; ++r)
        out[r] = sq_dist_scalar(x, table + r * cols, cols);
}

double masked_sum_scalar(const double *w, std::uint32_t mask, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (mask & (std::uint32_t(1) << k))
            acc += w[k];
    return acc;
}

std::size_t count_below_scalar(const double *x, std::size_t n, double threshold)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        count += x[i] < threshold ? 1 : 0;
    return count;
}

void cmatvec_acc_scalar(const std::complex<double> *h_cols, std::size_t ld,
                        const std::int32_t *idx, std::size_t n_idx,
                        const std::complex<double> *s, std::complex<double> *r, std::size_t len)
{
    for (std::size_t a = 0; a < n_idx; ++a)
    {
        const std::complex<double> *col = h_cols + std::size_t(idx[a]) * ld;
        const double sre = s[a].real(), sim = s[a].imag();
        for (std::size_t l = 0; l < len; ++l)
        {
            const double hre = col[l].real(), him = col[l].imag();
            r[l] += std::complex<double>(hre * sre - him * sim, hre * sim + him * sre);
        }
    }
}

} // namespace

const Dispatch &scalar_table()
{
    static const Dispatch t = {"scalar",           sum_abs2_scalar,    sq_dist_scalar,
                               sq_dist_rows_scalar, masked_sum_scalar, count_below_scalar,
                               cmatvec_acc_scalar};
    return t;
}

} // namespace crcoex::kernels
