// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "fasrsma/kernels.hpp"

using namespace fasrsma::kernels;

namespace {

std::vector<cplx> random_cvec(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(gen), d(gen)};
  return v;
}

std::vector<const KernelSet*> vector_variants() {
  std::vector<const KernelSet*> out;
  if (auto* k = avx2()) out.push_back(k);
  if (auto* k = neon()) out.push_back(k);
  return out;
}

}  // namespace

TEST(Kernels, ScalarColorMatchesNaiveProduct) {
  std::mt19937_64 gen(1);
  for (std::size_t rows : {1u, 2u, 5u, 20u}) {
    const auto a = random_cvec(rows * rows, gen);
    const auto x = random_cvec(rows, gen);
    std::vector<cplx> out(rows);
    scalar().color(a, rows, rows, x, out);
    for (std::size_t j = 0; j < rows; ++j) {
      cplx ref{};
      for (std::size_t m = 0; m < rows; ++m) ref += a[m * rows + j] * x[m];
      EXPECT_NEAR(std::abs(out[j] - ref), 0.0, 1e-12);
    }
  }
}

TEST(Kernels, ColorIgnoresColumnsPastRank) {
  std::mt19937_64 gen(2);
  const std::size_t rows = 6;
  auto a = random_cvec(rows * rows, gen);
  const auto x = random_cvec(rows, gen);
  std::vector<cplx> full(rows), truncated(rows);
  scalar().color(a, rows, 3, x, truncated);
  for (std::size_t i = 3 * rows; i < a.size(); ++i) a[i] = 0.0;
  scalar().color(a, rows, rows, x, full);
  for (std::size_t j = 0; j < rows; ++j) EXPECT_EQ(full[j], truncated[j]);
}

TEST(Kernels, ScalarPortPowerMatchesNorms) {
  std::mt19937_64 gen(3);
  const std::size_t rows = 4, ports = 7;
  const auto h = random_cvec(rows * ports, gen);
  std::vector<double> out(ports);
  scalar().port_power(h, rows, ports, out);
  for (std::size_t n = 0; n < ports; ++n) {
    double ref = 0.0;
    for (std::size_t l = 0; l < rows; ++l) ref += std::norm(h[l * ports + n]);
    EXPECT_NEAR(out[n], ref, 1e-12);
  }
}

// The vector variants replay the scalar operation order, so equality is exact.
TEST(Kernels, VectorVariantsBitIdenticalToScalar) {
  const auto variants = vector_variants();
  if (variants.empty()) GTEST_SKIP() << "no SIMD variant on this CPU";
  std::mt19937_64 gen(4);
  for (const KernelSet* k : variants) {
    for (std::size_t rows = 1; rows <= 23; ++rows) {
      for (std::size_t cols : {std::size_t{1}, rows / 2 + 1, rows}) {
        const auto a = random_cvec(rows * rows, gen);
        const auto x = random_cvec(rows, gen);
        std::vector<cplx> ref(rows), got(rows);
        scalar().color(a, rows, cols, x, ref);
        k->color(a, rows, cols, x, got);
        for (std::size_t j = 0; j < rows; ++j) {
          ASSERT_EQ(ref[j].real(), got[j].real()) << k->name << " rows=" << rows << " j=" << j;
          ASSERT_EQ(ref[j].imag(), got[j].imag()) << k->name << " rows=" << rows << " j=" << j;
        }
      }
      for (std::size_t l : {1u, 2u, 4u}) {
        const auto h = random_cvec(l * rows, gen);
        std::vector<double> ref(rows), got(rows);
        scalar().port_power(h, l, rows, ref);
        k->port_power(h, l, rows, got);
        for (std::size_t n = 0; n < rows; ++n) ASSERT_EQ(ref[n], got[n]) << k->name;
      }
    }
  }
}

TEST(Kernels, ActiveIsOneOfTheVariants) {
  const auto& a = active();
  EXPECT_TRUE(&a == &scalar() || &a == avx2() || &a == neon());
}

TEST(Kernels, ArgmaxFirstBreaksTiesLow) {
  const std::vector<double> v{0.2, 1.5, 0.9, 1.5};
  EXPECT_EQ(argmax_first(v), 1u);
  const std::vector<double> flat{3.0, 3.0, 3.0};
  EXPECT_EQ(argmax_first(flat), 0u);
  const std::vector<double> one{7.0};
  EXPECT_EQ(argmax_first(one), 0u);
}
