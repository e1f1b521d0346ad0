// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fasrsma/channel.hpp"
#include "fasrsma/errors.hpp"
#include "oracles.hpp"

using namespace fasrsma;

TEST(PortGrid, Positions) {
  const PortGrid g(5, 2.0);
  EXPECT_EQ(g.position(0), 0.0);
  EXPECT_EQ(g.position(4), 2.0);
  for (std::size_t n = 1; n < 5; ++n) EXPECT_GT(g.position(n), g.position(n - 1));
  EXPECT_DOUBLE_EQ(g.spacing(), 0.5);

  const PortGrid single(1, 3.0);
  EXPECT_EQ(single.position(0), 0.0);
  EXPECT_EQ(single.spacing(), 0.0);
}

TEST(PortGrid, RejectsInvalid) {
  EXPECT_THROW(PortGrid(0, 0.5), ConfigError);
  EXPECT_THROW(PortGrid(4, -0.1), ConfigError);
  EXPECT_THROW(PortGrid(4, std::nan("")), ConfigError);
  EXPECT_NO_THROW(PortGrid(4, 0.0));
}

TEST(JakesCorrelation, Examples) {
  EXPECT_EQ(jakes_correlation(0.0), 1.0);
  // Series oracle at x = pi.
  const double at_pi = static_cast<double>(oracle::j0_series(std::numbers::pi_v<long double>));
  EXPECT_NEAR(jakes_correlation(0.5), at_pi, 1e-12);
  EXPECT_NEAR(jakes_correlation(0.5), -0.304242, 1e-6);
  EXPECT_LT(std::abs(jakes_correlation(0.382735)), 1e-4);
  EXPECT_THROW(jakes_correlation(-0.1), std::domain_error);
}

TEST(JakesCorrelation, RangeMinusHalfToOne) {
  for (int i = 0; i <= 5000; ++i) {
    const double r = jakes_correlation(i * 0.002);
    EXPECT_LE(r, 1.0);
    EXPECT_GE(r, -0.5);
  }
}

TEST(BuildCovariance, SinglePort) {
  const auto cov = build_covariance(PortGrid(1, 0.5));
  ASSERT_EQ(cov.num_ports(), 1u);
  EXPECT_EQ(cov.matrix(0, 0), cplx(1.0));
  EXPECT_EQ(cov.coloring(0, 0), cplx(1.0));
  EXPECT_EQ(cov.truncation_rank, 1u);
}

TEST(BuildCovariance, TwoPortsHalfWavelength) {
  const auto cov = build_covariance(PortGrid(2, 0.5));
  const double rho = static_cast<double>(oracle::j0_series(std::numbers::pi_v<long double>));
  EXPECT_EQ(cov.matrix(0, 0), cplx(1.0));
  EXPECT_EQ(cov.matrix(1, 1), cplx(1.0));
  EXPECT_NEAR(cov.matrix(0, 1).real(), rho, 1e-12);
  EXPECT_EQ(cov.matrix(0, 1), cov.matrix(1, 0));
  EXPECT_EQ(cov.truncation_rank, 2u);
}

TEST(BuildCovariance, ThreePortsToeplitz) {
  for (double w : {0.1, 0.5, 1.7}) {
    const auto cov = build_covariance(PortGrid(3, w));
    EXPECT_EQ(cov.matrix(0, 2).real(), jakes_correlation(w));
    EXPECT_EQ(cov.matrix(0, 1), cov.matrix(1, 2));
  }
}

TEST(BuildCovariance, StructuralInvariantsAndFactorization) {
  for (std::size_t n : {2u, 5u, 10u, 20u, 64u}) {
    for (double w : {0.0, 0.05, 0.5, 3.0}) {
      const auto cov = build_covariance(PortGrid(n, w));
      for (std::size_t r = 0; r < n; ++r) {
        EXPECT_EQ(cov.matrix(r, r), cplx(1.0));
        for (std::size_t c = 0; c < n; ++c) {
          EXPECT_EQ(cov.matrix(r, c), std::conj(cov.matrix(c, r)));
          if (r > 0 && c > 0) {
            EXPECT_EQ(cov.matrix(r, c), cov.matrix(r - 1, c - 1));
          }
        }
      }
      for (std::size_t m = 1; m < n; ++m) EXPECT_GE(cov.eigenvalues[m - 1], cov.eigenvalues[m]);
      EXPECT_GE(cov.eigenvalues.back(), -1e-10);

      std::size_t rank = 0;
      for (double l : cov.eigenvalues) rank += l > kPsdEpsilon;
      EXPECT_EQ(cov.truncation_rank, rank);

      // C C^H against the clamped covariance (factorization contract) and
      // against Sigma itself (clamping removes only numerical noise).
      const CMatrix cc = cov.clamped();
      double err_clamped = 0.0, err_sigma = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          cplx direct{};
          for (std::size_t m = 0; m < n; ++m) direct += cov.coloring(r, m) * std::conj(cov.coloring(c, m));
          err_clamped = std::max(err_clamped, std::abs(direct - cc(r, c)));
          err_sigma = std::max(err_sigma, std::abs(direct - cov.matrix(r, c)));
        }
      EXPECT_LE(err_clamped, 1e-8) << n << " " << w;
      EXPECT_LE(err_sigma, 1e-4) << n << " " << w;
    }
  }
}

TEST(BuildCovariance, CollocatedPortsAreRankOne) {
  const auto cov = build_covariance(PortGrid(8, 0.0));
  EXPECT_EQ(cov.truncation_rank, 1u);
}

TEST(SampleChannel, Shape) {
  const auto cov = build_covariance(PortGrid(20, 0.5));
  TrialRng rng(1, 2, 3);
  const auto h = sample_channel(cov, 3, 4, rng);
  ASSERT_EQ(h.num_users(), 3u);
  for (const auto& u : h.users) {
    EXPECT_EQ(u.tx_antennas(), 4u);
    EXPECT_EQ(u.num_ports(), 20u);
  }
  EXPECT_EQ(rng.blocks_consumed(), 3u * 4u * 20u);
  EXPECT_THROW(sample_channel(cov, 0, 1, rng), ConfigError);
}

TEST(SampleChannel, DeterministicGivenStream) {
  const auto cov = build_covariance(PortGrid(10, 0.5));
  TrialRng a(5, 6, 7), b(5, 6, 7);
  const auto ha = sample_channel(cov, 2, 2, a);
  const auto hb = sample_channel(cov, 2, 2, b);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < ha.users[k].data().size(); ++i)
      EXPECT_EQ(ha.users[k].data()[i], hb.users[k].data()[i]);
}

namespace {

// Empirical correlation E[h_r h_c^*] from `draws` rows.
std::vector<cplx> empirical_covariance(const SpatialCovariance& cov, int draws, std::uint64_t seed) {
  const std::size_t n = cov.num_ports();
  std::vector<cplx> acc(n * n);
  for (int t = 0; t < draws; ++t) {
    TrialRng rng(seed, 0, static_cast<std::uint64_t>(t));
    const auto h = sample_channel(cov, 1, 1, rng);
    const auto row = h.users[0].row(0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) acc[r * n + c] += row[r] * std::conj(row[c]);
  }
  for (auto& v : acc) v /= static_cast<double>(draws);
  return acc;
}

}  // namespace

TEST(SampleChannel, WhiteCaseStatistics) {
  // Explicit identity covariance: independent unit-power ports.
  SpatialCovariance white;
  white.matrix = CMatrix(2, 2);
  white.coloring = CMatrix(2, 2);
  for (std::size_t i = 0; i < 2; ++i) white.matrix(i, i) = white.coloring(i, i) = 1.0;
  white.truncation_rank = 2;
  white.eigenvalues = {1.0, 1.0};
  constexpr int n = 100000;
  const auto emp = empirical_covariance(white, n, 17);
  // |h|^2 ~ Exp(1) has sd 1; the cross term has sd 1 as well.
  const double band = 3.0 / std::sqrt(n);
  EXPECT_NEAR(emp[0].real(), 1.0, band);
  EXPECT_NEAR(emp[3].real(), 1.0, band);
  EXPECT_NEAR(std::abs(emp[1]), 0.0, 3.0 * band);
}

TEST(SampleChannel, TwoPortCorrelation) {
  const auto cov = build_covariance(PortGrid(2, 0.5));
  constexpr int n = 100000;
  const auto emp = empirical_covariance(cov, n, 23);
  const double band = 3.0 / std::sqrt(n);
  EXPECT_NEAR(emp[1].real(), -0.304242, 3.0 * band);
  EXPECT_NEAR(emp[1].imag(), 0.0, 3.0 * band);
  EXPECT_NEAR(emp[0].real(), 1.0, 3.0 * band);
}
