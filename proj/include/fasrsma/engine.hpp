// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "fasrsma/metrics.hpp"
#include "fasrsma/scenario.hpp"

namespace fasrsma {

/// Hard failure of a run (e.g. too many singular-channel resamples).
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trials are reduced in blocks of this many, in trial-index order, so the
/// merged statistics do not depend on how blocks are spread over workers.
inline constexpr std::uint64_t kTrialBlock = 4096;

/// A trial is redrawn at most this many times before the run is aborted.
inline constexpr int kMaxResamplesPerTrial = 32;

struct RunDiagnostics {
  std::uint64_t resampled_trials = 0;  // trials needing at least one redraw
  std::uint64_t redraws = 0;           // total redraws
  std::uint64_t common_fallbacks = 0;  // trials where the common beam fell back to MRT
  std::string kernels;                 // SIMD variant used
};

struct RunOutput {
  ResultTable table;
  RunDiagnostics diagnostics;
};

/// Runs every trial of `scenario` at every SNR grid point.
///
/// Trial i draws its channel from TrialRng(seed, hash(label), i); the same
/// draw serves all SNR points. A trial whose precoder reports a singular or
/// degenerate channel is redrawn from the continuation of its own stream.
/// The table holds, per SNR point, avg_sum_rate, network_op and user_op[k].
/// Output is bit-identical for any `workers` >= 1. Throws RunError if more
/// than 1% of trials needed a redraw.
RunOutput run_scenario(const Scenario& scenario, std::size_t workers = 1);

/// Runs each scenario and returns the concatenated, sorted table.
RunOutput run_scenarios(std::span<const Scenario> scenarios, std::size_t workers = 1);

}  // namespace fasrsma
