// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference computations kept independent of the library code paths they
// check.

#include <cmath>
#include <complex>
#include <vector>

namespace fasrsma::oracle {

/// sum_{m<terms} (-1)^m (x/2)^{2m} / (m!)^2 in long double.
inline long double j0_series(long double x, int terms = 60) {
  long double sum = 0.0L;
  long double term = 1.0L;
  const long double q = x * x / 4.0L;
  for (int m = 0; m < terms; ++m) {
    if (m > 0) term *= -q / (static_cast<long double>(m) * m);
    sum += term;
  }
  return sum;
}

/// Bisection for a sign change of f on [lo, hi].
template <typename F>
double bisect(F f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

using cvec = std::vector<std::complex<double>>;

/// |a^H b|
inline double inner_abs(const cvec& a, const cvec& b) {
  std::complex<double> s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

/// Naive Wilson score interval half-width.
inline double wilson_half_width(double p, double n, double z = 1.959963984540054) {
  return z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
}

}  // namespace fasrsma::oracle
