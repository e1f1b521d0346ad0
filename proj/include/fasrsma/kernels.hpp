// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops of the trial pipeline.
//
// Every kernel has a scalar reference and, where the target supports it,
// AVX2 (x86-64) and NEON (aarch64) variants. The vector variants perform the
// same floating-point operations in the same order as the scalar reference,
// so with contraction disabled the results are bit-identical; the kernel
// tests assert exact equality.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace fasrsma::kernels {

using cplx = std::complex<double>;

/// out[j] = sum_{m < cols} a[m * rows + j] * x[m] for j < rows.
/// `a` is column-major with `rows` rows; only the first `cols` columns are
/// read. out.size() == rows, x.size() >= cols.
using ColorFn = void (*)(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                         std::span<const cplx> x, std::span<cplx> out);

/// out[n] = sum_l |h[l * ports + n]|^2 for a row-major (rows x ports) block.
using PortPowerFn = void (*)(std::span<const cplx> h, std::size_t rows, std::size_t ports,
                             std::span<double> out);

struct KernelSet {
  std::string_view name;
  ColorFn color;
  PortPowerFn port_power;
};

const KernelSet& scalar();

/// nullptr when the variant is not compiled for this target or the CPU
/// lacks the instruction set.
const KernelSet* avx2();
const KernelSet* neon();

/// Fastest variant supported by the running CPU. Selected once; the
/// environment variable FASRSMA_KERNELS=scalar forces the reference path.
const KernelSet& active();

/// Index of the largest value, lowest index on ties. values must be nonempty.
std::size_t argmax_first(std::span<const double> values);

}  // namespace fasrsma::kernels
