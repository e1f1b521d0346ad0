// SPDX-License-Identifier: Apache-2.0
#include "kernels_impl.hpp"

#if defined(FASRSMA_HAVE_AVX2_VARIANT)

#include <immintrin.h>

// Compiled with target("avx2") only: FMA stays disabled so every lane
// reproduces the scalar mul/add sequence exactly.

namespace fasrsma::kernels::detail {

namespace {

// One __m256d holds two interleaved complex values [re0 im0 re1 im1].
__attribute__((target("avx2"))) inline __m256d cmul_bcast(__m256d a, __m256d xr,
                                                          __m256d xi) {
  const __m256d t1 = _mm256_mul_pd(a, xr);                              // ar*xr, ai*xr
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(a, 0b0101), xi);  // ai*xi, ar*xi
  return _mm256_addsub_pd(t1, t2);  // ar*xr - ai*xi, ai*xr + ar*xi
}

}  // namespace

__attribute__((target("avx2"))) void color_avx2(std::span<const cplx> a, std::size_t rows,
                                                std::size_t cols, std::span<const cplx> x,
                                                std::span<cplx> out) {
  const double* base = reinterpret_cast<const double*>(a.data());
  double* dst = reinterpret_cast<double*>(out.data());
  std::size_t j = 0;
  // Four complex outputs per iteration keep two independent accumulators.
  for (; j + 4 <= rows; j += 4) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (std::size_t m = 0; m < cols; ++m) {
      const __m256d xr = _mm256_set1_pd(x[m].real());
      const __m256d xi = _mm256_set1_pd(x[m].imag());
      const double* col = base + 2 * (m * rows + j);
      acc0 = _mm256_add_pd(acc0, cmul_bcast(_mm256_loadu_pd(col), xr, xi));
      acc1 = _mm256_add_pd(acc1, cmul_bcast(_mm256_loadu_pd(col + 4), xr, xi));
    }
    _mm256_storeu_pd(dst + 2 * j, acc0);
    _mm256_storeu_pd(dst + 2 * j + 4, acc1);
  }
  for (; j + 2 <= rows; j += 2) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t m = 0; m < cols; ++m) {
      const __m256d xr = _mm256_set1_pd(x[m].real());
      const __m256d xi = _mm256_set1_pd(x[m].imag());
      acc = _mm256_add_pd(acc, cmul_bcast(_mm256_loadu_pd(base + 2 * (m * rows + j)), xr, xi));
    }
    _mm256_storeu_pd(dst + 2 * j, acc);
  }
  if (j < rows) {
    __m128d acc = _mm_setzero_pd();
    for (std::size_t m = 0; m < cols; ++m) {
      const __m128d av = _mm_loadu_pd(base + 2 * (m * rows + j));
      const __m128d t1 = _mm_mul_pd(av, _mm_set1_pd(x[m].real()));
      const __m128d t2 = _mm_mul_pd(_mm_shuffle_pd(av, av, 0b01), _mm_set1_pd(x[m].imag()));
      acc = _mm_add_pd(acc, _mm_addsub_pd(t1, t2));
    }
    _mm_storeu_pd(dst + 2 * j, acc);
  }
}

__attribute__((target("avx2"))) void port_power_avx2(std::span<const cplx> h, std::size_t rows,
                                                     std::size_t ports, std::span<double> out) {
  for (std::size_t n = 0; n < ports; ++n) out[n] = 0.0;
  const double* base = reinterpret_cast<const double*>(h.data());
  for (std::size_t l = 0; l < rows; ++l) {
    const double* row = base + 2 * l * ports;
    std::size_t n = 0;
    // Two loads give four complex values; hadd pairs re^2 with im^2 per port
    // as (re*re + im*im), matching the scalar evaluation order.
    for (; n + 4 <= ports; n += 4) {
      const __m256d v0 = _mm256_loadu_pd(row + 2 * n);
      const __m256d v1 = _mm256_loadu_pd(row + 2 * n + 4);
      const __m256d s = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
      // s = [p0 p2 p1 p3]
      const __m256d p = _mm256_permute4x64_pd(s, 0b11011000);
      _mm256_storeu_pd(out.data() + n, _mm256_add_pd(_mm256_loadu_pd(out.data() + n), p));
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
