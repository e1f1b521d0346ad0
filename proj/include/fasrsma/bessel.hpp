// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace fasrsma {

/// Bessel function of the first kind, order zero.
///
/// Power series for |x| < 12 and the Hankel asymptotic expansion beyond.
/// Absolute error stays below 1e-9 for |x| <= 1e4. Throws std::domain_error
/// for non-finite input.
double bessel_j0(double x);

}  // namespace fasrsma
