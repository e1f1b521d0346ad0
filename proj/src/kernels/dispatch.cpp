// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace fasrsma::kernels {

const KernelSet& scalar() {
  static const KernelSet set{"scalar", &detail::color_scalar, &detail::port_power_scalar};
  return set;
}

const KernelSet* avx2() {
#if defined(FASRSMA_HAVE_AVX2_VARIANT)
  static const KernelSet set{"avx2", &detail::color_avx2, &detail::port_power_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &set : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet* neon() {
#if defined(FASRSMA_HAVE_NEON_VARIANT)
  static const KernelSet set{"neon", &detail::color_neon, &detail::port_power_neon};
  return &set;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = []() -> const KernelSet& {
    const char* forced = std::getenv("FASRSMA_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar();
    if (const KernelSet* k = avx2()) return *k;
    if (const KernelSet* k = neon()) return *k;
    return scalar();
  }();
  return chosen;
}

std::size_t argmax_first(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t n = 1; n < values.size(); ++n) {
    if (values[n] > values[best]) best = n;
  }
  return best;
}

}  // namespace fasrsma::kernels
