// SPDX-License-Identifier: Apache-2.0
#include "kernels_impl.hpp"

#if defined(FASRSMA_HAVE_NEON_VARIANT)

#include <arm_neon.h>

// Separate vmulq/vaddq (no vfmaq) so each lane matches the scalar reference.

namespace fasrsma::kernels::detail {

void color_neon(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                std::span<const cplx> x, std::span<cplx> out) {
  const double* base = reinterpret_cast<const double*>(a.data());
  double* dst = reinterpret_cast<double*>(out.data());
  const float64x2_t sign = {-1.0, 1.0};
  for (std::size_t j = 0; j < rows; ++j) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t m = 0; m < cols; ++m) {
      const float64x2_t av = vld1q_f64(base + 2 * (m * rows + j));  // ar ai
      const float64x2_t t1 = vmulq_f64(av, vdupq_n_f64(x[m].real()));
      const float64x2_t sw = vextq_f64(av, av, 1);                    // ai ar
      const float64x2_t t2 = vmulq_f64(vmulq_f64(sw, vdupq_n_f64(x[m].imag())), sign);
      acc = vaddq_f64(acc, vaddq_f64(t1, t2));
    }
    vst1q_f64(dst + 2 * j, acc);
  }
}

void port_power_neon(std::span<const cplx> h, std::size_t rows, std::size_t ports,
                     std::span<double> out) {
  for (std::size_t n = 0; n < ports; ++n) out[n] = 0.0;
  const double* base = reinterpret_cast<const double*>(h.data());
  for (std::size_t l = 0; l < rows; ++l) {
    const double* row = base + 2 * l * ports;
    std::size_t n = 0;
    for (; n + 2 <= ports; n += 2) {
      const float64x2_t v0 = vld1q_f64(row + 2 * n);
      const float64x2_t v1 = vld1q_f64(row + 2 * n + 2);
      const float64x2_t p = vpaddq_f64(vmulq_f64(v0, v0), vmulq_f64(v1, v1));
      vst1q_f64(out.data() + n, vaddq_f64(vld1q_f64(out.data() + n), p));
    }
    for (; n < ports; ++n) {
      const double re = row[2 * n];
      const double im = row[2 * n + 1];
      out[n] += re * re + im * im;
    }
  }
}

}  // namespace fasrsma::kernels::detail

#endif
