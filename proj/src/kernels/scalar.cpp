// SPDX-License-Identifier: Apache-2.0
#include "kernels_impl.hpp"

namespace fasrsma::kernels::detail {

void color_scalar(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                  std::span<const cplx> x, std::span<cplx> out) {
  for (std::size_t j = 0; j < rows; ++j) {
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t m = 0; m < cols; ++m) {
      const double ar = a[m * rows + j].real();
      const double ai = a[m * rows + j].imag();
      const double xr = x[m].real();
      const double xi = x[m].imag();
      acc_re += ar * xr - ai * xi;
      acc_im += ai * xr + ar * xi;
    }
    out[j] = cplx(acc_re, acc_im);
  }
}

void port_power_scalar(std::span<const cplx> h, std::size_t rows, std::size_t ports,
                       std::span<double> out) {
  for (std::size_t n = 0; n < ports; ++n) out[n] = 0.0;
  for (std::size_t l = 0; l < rows; ++l) {
    const cplx* row = h.data() + l * ports;
    for (std::size_t n = 0; n < ports; ++n) {
      const double re = row[n].real();
      const double im = row[n].imag();
      out[n] += re * re + im * im;
    }
  }
}

}  // namespace fasrsma::kernels::detail
