// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fasrsma/bessel.hpp"
#include "oracles.hpp"

using fasrsma::bessel_j0;

TEST(BesselJ0, ValueAtZeroIsOne) { EXPECT_EQ(bessel_j0(0.0), 1.0); }

TEST(BesselJ0, MatchesThirtyTermSeriesAtOne) {
  // 30-term series evaluated in double: 0.7651976865579666
  EXPECT_NEAR(bessel_j0(1.0), 0.765197687, 5e-10);
  EXPECT_NEAR(bessel_j0(1.0), static_cast<double>(fasrsma::oracle::j0_series(1.0L, 30)), 1e-15);
}

TEST(BesselJ0, FirstRoot) {
  const double root = fasrsma::oracle::bisect(
      [](double x) { return static_cast<double>(fasrsma::oracle::j0_series(x)); }, 2.0, 3.0);
  EXPECT_NEAR(root, 2.404825557695773, 1e-12);
  EXPECT_LT(std::abs(bessel_j0(2.404826)), 1e-5);
  EXPECT_LT(std::abs(bessel_j0(root)), 1e-12);
}

TEST(BesselJ0, SeriesOracleOnZeroToTwelve) {
  for (int i = 0; i <= 1200; ++i) {
    const double x = 0.01 * i;
    EXPECT_NEAR(bessel_j0(x), static_cast<double>(fasrsma::oracle::j0_series(x)), 1e-9) << x;
  }
}

TEST(BesselJ0, AgreesWithStdlibUpToTenThousand) {
  // std::cyl_bessel_j serves as a second, unrelated reference.
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = 12.0 * std::pow(1e4 / 12.0, u(gen));
    EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-9) << x;
  }
  for (double x : {11.999999, 12.0, 12.000001, 50.0, 1e3, 1e4})
    EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-9) << x;
}

TEST(BesselJ0, EvenSymmetry) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-200.0, 200.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(gen);
    EXPECT_EQ(bessel_j0(x), bessel_j0(-x));
  }
}

TEST(BesselJ0, RejectsNonFinite) {
  EXPECT_THROW(bessel_j0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  EXPECT_THROW(bessel_j0(std::numeric_limits<double>::infinity()), std::domain_error);
  EXPECT_THROW(bessel_j0(-std::numeric_limits<double>::infinity()), std::domain_error);
}
