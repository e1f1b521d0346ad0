// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fasrsma/access.hpp"
#include "fasrsma/channel.hpp"
#include "fasrsma/fas.hpp"
#include "fasrsma/metrics.hpp"

namespace fasrsma {

/// Inclusive, linearly spaced SNR grid with `steps` points.
struct SnrGrid {
  double min_db = 0.0;
  double max_db = 40.0;
  std::size_t steps = 9;

  std::vector<double> points() const;
};

inline constexpr std::uint64_t kDefaultTrials = 100000;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr double kDefaultAperture = 0.5;

struct Scenario {
  std::size_t users = 3;
  std::size_t tx_antennas = 1;
  PortGrid port_grid{1, kDefaultAperture};
  PortStrategy strategy = PortStrategy::max_gain();
  SchemeConfig scheme;  // snr_db is overwritten per grid point
  OutageThresholds thresholds = OutageThresholds::uniform(3, 0.5, 0.5);
  SnrGrid snr;
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  /// Random-stream key. Scenarios expanded from one document share it, so
  /// they see the same channel draws whenever their shapes agree.
  std::string label = "scenario";

  /// Name of the curve this scenario produces, e.g. "FAS-RSMA N=20 t=0.5"
  /// or "FPA-NOMA". A single port or a fixed port is reported as FPA.
  std::string series_label() const;

  /// Throws ConfigError ("<key>: <message>") on the first violated invariant.
  void validate() const;
};

struct Diagnostic {
  std::string key_path;
  std::string message;
};

struct ParseResult {
  std::vector<Scenario> scenarios;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return diagnostics.empty(); }
};

/// Parses a YAML scenario document. Top-level keys:
///   users, tx_antennas, ports, aperture_wavelengths, strategy
///   (max_gain | fixed:<i>), scheme (rsma | noma), common_power_fraction,
///   noma_power_fractions, noma_rate_rule (sic_decodable | own_sinr),
///   threshold_common, threshold_private (scalar or list),
///   snr_db {min, max, steps}, trials, seed, label, matrix.
/// `matrix` maps any of scheme, ports, strategy, common_power_fraction,
/// aperture_wavelengths, tx_antennas, users to a list of values; the
/// scenarios are the cross product. Parameters a scheme ignores are
/// normalized and duplicate curves dropped.
ParseResult parse_config(std::string_view document);
ParseResult parse_config_file(const std::filesystem::path& path);

}  // namespace fasrsma
