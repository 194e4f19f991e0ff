#include <cstdlib>
#include <cstring>

#include "ulab/simd/kernels.hpp"

namespace ulab::simd {

#if defined(ULAB_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(ULAB_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("ULAB_KERNELS");
    if (forced && std::strcmp(forced, "scalar") == 0) return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace ulab::simd
