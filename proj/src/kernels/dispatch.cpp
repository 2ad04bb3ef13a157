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

#include "crcoex/kernels.hpp"

#include <atomic>

namespace crcoex::kernels
{
namespace
{

const Dispatch *pick_auto()
{
#if defined(CRCOEX_HAVE_AVX2)
    if (avx2_available())
        return &avx2_table();
#endif
    return &scalar_table();
}

std::atomic<const Dispatch *> &active()
{
    static std::atomic<const Dispatch *> t{pick_auto()};
    return t;
}

} // namespace

bool avx2_available()
{
#if defined(CRCOEX_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Dispatch &table() { return *active().load(std::memory_order_relaxed); }

std::string_view backend_name() { return table().name; }

bool select_backend(std::string_view name)
{
    if (name == "auto")
    {
        active().store(pick_auto(), std::memory_order_relaxed);
        return true;
    }
    if (name == "scalar")
    {
        active().store(&scalar_table(), std::memory_order_relaxed);
        return true;
    }
#if defined(CRCOEX_HAVE_AVX2)
    if (name == "avx2" && avx2_available())
    {
        active().store(&avx2_table(), std::memory_order_relaxed);
        return true;
    }
#endif
    return false;
}

} // namespace crcoex::kernels
