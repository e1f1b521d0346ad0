// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fasrsma/bessel.hpp"
#include "fasrsma/errors.hpp"
#include "fasrsma/kernels.hpp"

namespace fasrsma {

PortGrid::PortGrid(std::size_t num_ports, double aperture_wavelengths)
    : num_ports_(num_ports), aperture_(aperture_wavelengths) {
  if (num_ports == 0) throw ConfigError("port grid needs at least one port");
  if (!std::isfinite(aperture_wavelengths) || aperture_wavelengths < 0.0)
    throw ConfigError("aperture must be finite and nonnegative");
}

double PortGrid::spacing() const noexcept {
  return num_ports_ < 2 ? 0.0 : aperture_ / static_cast<double>(num_ports_ - 1);
}

double PortGrid::position(std::size_t n) const noexcept {
  if (num_ports_ < 2) return 0.0;
  // Pin the last port to W exactly instead of accumulating spacing.
  if (n + 1 == num_ports_) return aperture_;
  return static_cast<double>(n) * aperture_ / static_cast<double>(num_ports_ - 1);
}

double jakes_correlation(double distance_wavelengths) {
  if (!(distance_wavelengths >= 0.0))
    throw std::domain_error("jakes_correlation: distance must be nonnegative");
  if (distance_wavelengths == 0.0) return 1.0;
  return bessel_j0(2.0 * std::numbers::pi * distance_wavelengths);
}

CMatrix SpatialCovariance::clamped() const {
  const std::size_t n = coloring.rows();
  CMatrix out(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      cplx acc{};
      for (std::size_t m = 0; m < truncation_rank; ++m)
        acc += coloring(r, m) * std::conj(coloring(c, m));
      out(r, c) = acc;
    }
  return out;
}

SpatialCovariance build_covariance(const PortGrid& grid) {
  const std::size_t n = grid.num_ports();
  SpatialCovariance cov;
  cov.matrix = CMatrix(n, n);

  // One correlation value per lag keeps the matrix exactly Toeplitz.
  std::vector<double> lag(n);
  for (std::size_t d = 0; d < n; ++d)
    lag[d] = d == 0 ? 1.0 : jakes_correlation(static_cast<double>(d) * grid.spacing());
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) cov.matrix(r, c) = lag[r > c ? r - c : c - r];

  if (n == 1) {
    cov.coloring = CMatrix(1, 1);
    cov.coloring(0, 0) = 1.0;
    cov.eigenvalues = {1.0};
    cov.truncation_rank = 1;
    return cov;
  }

  Eigen::MatrixXcd sigma(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      sigma(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cov.matrix(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sigma);
  if (eig.info() != Eigen::Success) throw std::runtime_error("covariance eigendecomposition failed");

  // Eigen returns ascending eigenvalues; store descending.
  cov.coloring = CMatrix(n, n);
  cov.eigenvalues.resize(n);
  std::size_t rank = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const auto src = static_cast<Eigen::Index>(n - 1 - m);
    const double lambda = eig.eigenvalues()(src);
    cov.eigenvalues[m] = lambda;
    if (lambda <= kPsdEpsilon) continue;
    ++rank;
    const double scale = std::sqrt(lambda);
    for (std::size_t r = 0; r < n; ++r)
      cov.coloring(r, m) = eig.eigenvectors()(static_cast<Eigen::Index>(r), src) * scale;
  }
  cov.truncation_rank = rank;
  return cov;
}

void sample_channel_into(const SpatialCovariance& cov, TrialRng& rng, ChannelRealization& out,
                         std::span<cplx> scratch) {
  const std::size_t n = cov.num_ports();
  const auto& k = kernels::active();
  for (auto& user : out.users) {
    for (std::size_t l = 0; l < user.tx_antennas(); ++l) {
      for (std::size_t m = 0; m < n; ++m) scratch[m] = rng.next_complex_normal();
      k.color(cov.coloring.data(), n, cov.truncation_rank, scratch.first(n), user.row(l));
    }
  }
}

ChannelRealization sample_channel(const SpatialCovariance& cov, std::size_t users,
                                  std::size_t tx_antennas, TrialRng& rng) {
  if (users == 0 || tx_antennas == 0) throw ConfigError("sample_channel: K and L must be >= 1");
  ChannelRealization out;
  out.users.assign(users, UserChannel(tx_antennas, cov.num_ports()));
  std::vector<cplx> scratch(cov.num_ports());
  sample_channel_into(cov, rng, out, scratch);
  return out;
}

}  // namespace fasrsma
