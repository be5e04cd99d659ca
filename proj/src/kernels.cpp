// SPDX-License-Identifier: Apache-2.0

#include "stdd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace stdd::kern {

#if defined(STDD_HAVE_AVX2_TU)
namespace detail {
const Ops& avx2_table();
bool avx2_cpu_ok();
}  // namespace detail

bool avx2_available() { return detail::avx2_cpu_ok(); }
const Ops& avx2_ops() { return detail::avx2_table(); }
#else
bool avx2_available() { return false; }
const Ops& avx2_ops() { return scalar_ops(); }
#endif

static const Ops& pick()
{
    const char* force = std::getenv("STDD_SIMD");
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) return scalar_ops();
        if (std::strcmp(force, "avx2") == 0 && avx2_available()) return avx2_ops();
    }
    return avx2_available() ? avx2_ops() : scalar_ops();
}

const Ops& ops()
{
    static const Ops& chosen = pick();
    return chosen;
}

}  // namespace stdd::kern
