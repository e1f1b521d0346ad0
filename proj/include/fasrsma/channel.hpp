// SPDX-License-Identifier: Apache-2.0
#pragma once

// Spatially correlated Rayleigh fading across the candidate ports of a
// one-dimensional fluid-antenna aperture.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fasrsma/rng.hpp"

namespace fasrsma {

using cplx = std::complex<double>;

/// Eigenvalues at or below this are clamped to zero in the coloring transform.
inline constexpr double kPsdEpsilon = 1e-10;

/// N equispaced candidate ports over an aperture of W wavelengths.
class PortGrid {
 public:
  /// Throws ConfigError if num_ports == 0 or aperture is negative/non-finite.
  PortGrid(std::size_t num_ports, double aperture_wavelengths);

  std::size_t num_ports() const noexcept { return num_ports_; }
  /// As configured; has no effect when num_ports() == 1.
  double aperture() const noexcept { return aperture_; }
  /// x_n = n W / (N - 1); 0 for a single port.
  double position(std::size_t n) const noexcept;
  /// Distance between adjacent ports (0 for a single port).
  double spacing() const noexcept;

 private:
  std::size_t num_ports_;
  double aperture_;
};

/// Column-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[c * rows_ + r]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * rows_ + r]; }
  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Port correlation matrix and its coloring transform.
///
/// `matrix` is Hermitian Toeplitz with unit diagonal. `coloring` holds the
/// eigenvectors scaled by sqrt(max(lambda, 0)), ordered by descending
/// eigenvalue, with columns past `truncation_rank` zeroed, so that
/// coloring * coloring^H equals the clamped covariance.
struct SpatialCovariance {
  CMatrix matrix;
  CMatrix coloring;
  std::size_t truncation_rank = 0;
  std::vector<double> eigenvalues;  // descending, before clamping

  std::size_t num_ports() const noexcept { return matrix.rows(); }

  /// V diag(clamped lambda) V^H, i.e. coloring * coloring^H.
  CMatrix clamped() const;
};

/// Per-user L x N channel (tx antennas x candidate ports), row-major so
/// that each tx antenna's port vector is contiguous.
class UserChannel {
 public:
  UserChannel(std::size_t tx_antennas, std::size_t ports)
      : tx_(tx_antennas), ports_(ports), data_(tx_antennas * ports) {}

  std::size_t tx_antennas() const noexcept { return tx_; }
  std::size_t num_ports() const noexcept { return ports_; }
  cplx& operator()(std::size_t l, std::size_t n) noexcept { return data_[l * ports_ + n]; }
  const cplx& operator()(std::size_t l, std::size_t n) const noexcept { return data_[l * ports_ + n]; }
  std::span<cplx> row(std::size_t l) noexcept { return {data_.data() + l * ports_, ports_}; }
  std::span<const cplx> row(std::size_t l) const noexcept { return {data_.data() + l * ports_, ports_}; }
  std::span<const cplx> data() const noexcept { return data_; }

 private:
  std::size_t tx_;
  std::size_t ports_;
  std::vector<cplx> data_;
};

struct ChannelRealization {
  std::vector<UserChannel> users;

  std::size_t num_users() const noexcept { return users.size(); }
  std::size_t tx_antennas() const noexcept { return users.empty() ? 0 : users.front().tx_antennas(); }
  std::size_t num_ports() const noexcept { return users.empty() ? 0 : users.front().num_ports(); }
};

/// rho(d) = J0(2 pi d), d in wavelengths. Throws std::domain_error for d < 0.
double jakes_correlation(double distance_wavelengths);

SpatialCovariance build_covariance(const PortGrid& grid);

/// Draws one realization: for user k = 0..K-1, tx antenna l = 0..L-1, the
/// port row is coloring * z with z holding N fresh complex normals, drawn in
/// port order. Exactly K * L * N Philox blocks are consumed.
ChannelRealization sample_channel(const SpatialCovariance& cov, std::size_t users,
                                  std::size_t tx_antennas, TrialRng& rng);

/// As above, writing into an existing realization of matching shape
/// (avoids reallocation in the trial loop).
void sample_channel_into(const SpatialCovariance& cov, TrialRng& rng, ChannelRealization& out,
                         std::span<cplx> scratch);

}  // namespace fasrsma
