// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fasrsma/kernels.hpp"

namespace fasrsma::kernels::detail {

void color_scalar(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                  std::span<const cplx> x, std::span<cplx> out);
void port_power_scalar(std::span<const cplx> h, std::size_t rows, std::size_t ports,
                       std::span<double> out);

#if defined(__x86_64__) || defined(_M_X64)
#define FASRSMA_HAVE_AVX2_VARIANT 1
void color_avx2(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                std::span<const cplx> x, std::span<cplx> out);
void port_power_avx2(std::span<const cplx> h, std::size_t rows, std::size_t ports,
                     std::span<double> out);
#endif

#if defined(__aarch64__)
#define FASRSMA_HAVE_NEON_VARIANT 1
void color_neon(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                std::span<const cplx> x, std::span<cplx> out);
void port_power_neon(std::span<const cplx> h, std::size_t rows, std::size_t ports,
                     std::span<double> out);
#endif

}  // namespace fasrsma::kernels::detail
