// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fasrsma/access.hpp"

namespace fasrsma {

/// Target rates in bits/s/Hz. A stream is in outage when its rate is
/// strictly below its threshold, so zero thresholds never fire.
struct OutageThresholds {
  double common = 0.5;
  std::vector<double> private_rates;  // one per user

  static OutageThresholds uniform(std::size_t users, double common, double private_rate);
  /// Throws ConfigError for negative/non-finite values or a size mismatch.
  void validate(std::size_t users) const;
};

struct OutageFlags {
  std::vector<bool> user;
  bool network = false;
};

/// RSMA: user k fails if the common rate or its private rate is below
/// threshold. NOMA: user k fails if any message on its SIC chain is below
/// the threshold of that message's owner. Network outage is the OR.
OutageFlags outage_indicator(const RateVector& rates, const OutageThresholds& thresholds,
                             Scheme scheme);

/// Allocation-free variant used in the trial loop; `user_out` has K slots.
bool outage_indicator_into(const RateVector& rates, const OutageThresholds& thresholds,
                           Scheme scheme, std::span<std::uint8_t> user_out);

/// Common rate plus the sum of private rates.
double sum_rate(const RateVector& rates) noexcept;

struct Estimate {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Running mean/variance (Welford) with an order-fixed merge (Chan et al.).
/// Merging the same blocks in the same order always gives the same bits.
class RunningStats {
 public:
  void push(double x) noexcept;
  void merge(const RunningStats& other) noexcept;

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance (0 for fewer than two samples).
  double variance() const noexcept;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Mean with a 95% normal-approximation interval mean +- 1.96 s / sqrt(n).
/// Throws ConfigError for fewer than two samples.
Estimate mean_interval(const RunningStats& stats);

/// Wilson score interval for `successes` out of `trials`.
/// Throws ConfigError for fewer than two trials.
Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials);

enum class ValueKind { Rate, Bernoulli };

/// Aggregates a stream of per-trial values. Rate: normal interval.
/// Bernoulli (values 0/1): Wilson interval. `trials` must equal
/// values.size() and be >= 2.
Estimate aggregate(std::span<const double> values, std::size_t trials,
                   ValueKind kind = ValueKind::Rate);

/// Identifies one metric column of a result table. Ordering: avg_sum_rate,
/// network_op, then user_op[1..K].
struct Metric {
  enum class Kind { AvgSumRate, NetworkOp, UserOp };
  Kind kind = Kind::AvgSumRate;
  std::size_t user = 0;  // 1-based, UserOp only

  std::string name() const;
  /// Inverse of name(); throws ConfigError on unknown text.
  static Metric parse(const std::string& text);

  friend auto operator<=>(const Metric&, const Metric&) = default;
};

struct ResultRow {
  double snr_db = 0.0;
  std::string scheme_label;
  Metric metric;
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t resampled_trials = 0;
};

/// Rows of one run. sort() orders by (scheme_label, metric, snr_db).
struct ResultTable {
  std::vector<ResultRow> rows;

  void sort();
  void append(const ResultTable& other);
};

}  // namespace fasrsma
