// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fasrsma {

namespace {

constexpr double kSeriesLimit = 12.0;

// sum_m (-1)^m (x/2)^{2m} / (m!)^2; the largest term at x = 12 is ~4.2e3,
// so cancellation costs about 1e-12 absolute.
double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 80; ++m) {
    term *= -q / (static_cast<double>(m) * static_cast<double>(m));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && std::abs(term) < 1e-18) break;
  }
  return sum;
}

// J0(x) ~ sqrt(2/(pi x)) [P(x) cos(chi) - Q(x) sin(chi)], chi = x - pi/4.
// Terms a_k = prod_{j<=k} (2j-1)^2 / (k! 8^k x^k); summation stops at the
// smallest term, where the expansion is most accurate.
double j0_asymptotic(double x) {
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * k * x);
    if (next >= term) break;
    term = next;
    // k even contributes to P with sign (-1)^{k/2}; k odd to Q with sign
    // -(-1)^{(k-1)/2}.
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
    }
    if (term < 1e-17) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel_j0: non-finite argument");
  x = std::abs(x);
  if (x < kSeriesLimit) return j0_series(x);
  return j0_asymptotic(x);
}

}  // namespace fasrsma
