// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fasrsma/errors.hpp"

namespace fasrsma {

OutageThresholds OutageThresholds::uniform(std::size_t users, double common,
                                           double private_rate) {
  return {common, std::vector<double>(users, private_rate)};
}

void OutageThresholds::validate(std::size_t users) const {
  if (!std::isfinite(common) || common < 0.0)
    throw ConfigError("threshold_common: must be finite and >= 0");
  if (private_rates.size() != users)
    throw ConfigError("threshold_private: need one threshold per user");
  for (double r : private_rates)
    if (!std::isfinite(r) || r < 0.0)
      throw ConfigError("threshold_private: must be finite and >= 0");
}

bool outage_indicator_into(const RateVector& rates, const OutageThresholds& thresholds,
                           Scheme scheme, std::span<std::uint8_t> user_out) {
  const std::size_t k = rates.private_rates.size();
  bool network = false;
  if (scheme == Scheme::Rsma) {
    const bool common_fails = rates.common_rate < thresholds.common;
    for (std::size_t u = 0; u < k; ++u) {
      const bool out = common_fails || rates.private_rates[u] < thresholds.private_rates[u];
      user_out[u] = out;
      network = network || out;
    }
  } else {
    for (std::size_t u = 0; u < k; ++u) {
      bool out = false;
      for (const auto& step : rates.sic_chain[u])
        if (step.rate < thresholds.private_rates[step.owner]) {
          out = true;
          break;
        }
      user_out[u] = out;
      network = network || out;
    }
  }
  return network;
}

OutageFlags outage_indicator(const RateVector& rates, const OutageThresholds& thresholds,
                             Scheme scheme) {
  const std::size_t k = rates.private_rates.size();
  if (scheme == Scheme::Noma && rates.sic_chain.size() != k)
    throw ConfigError("outage_indicator: NOMA rates carry no SIC chain");
  thresholds.validate(k);
  std::vector<std::uint8_t> flags(k);
  OutageFlags out;
  out.network = outage_indicator_into(rates, thresholds, scheme, flags);
  out.user.assign(flags.begin(), flags.end());
  return out;
}

double sum_rate(const RateVector& rates) noexcept {
  double s = rates.common_rate;
  for (double r : rates.private_rates) s += r;
  return s;
}

void RunningStats::push(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double RunningStats::variance() const noexcept {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

Estimate mean_interval(const RunningStats& stats) {
  if (stats.count() < 2) throw ConfigError("aggregate: need at least two trials");
  const double half = kZ95 * std::sqrt(stats.variance() / static_cast<double>(stats.count()));
  return {stats.mean(), stats.mean() - half, stats.mean() + half};
}

Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials < 2) throw ConfigError("aggregate: need at least two trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Keep the point estimate inside the interval despite rounding at p = 0, 1.
  const double lo = std::clamp(std::min(centre - half, p), 0.0, 1.0);
  const double hi = std::clamp(std::max(centre + half, p), 0.0, 1.0);
  return {p, successes == 0 ? 0.0 : lo, successes == trials ? 1.0 : hi};
}

Estimate aggregate(std::span<const double> values, std::size_t trials, ValueKind kind) {
  if (trials < 2) throw ConfigError("aggregate: need at least two trials");
  if (values.size() != trials) throw ConfigError("aggregate: trial count does not match values");
  if (kind == ValueKind::Bernoulli) {
    std::uint64_t hits = 0;
    for (double v : values) {
      if (v != 0.0 && v != 1.0) throw ConfigError("aggregate: Bernoulli values must be 0 or 1");
      hits += v == 1.0;
    }
    return wilson_interval(hits, trials);
  }
  RunningStats s;
  for (double v : values) s.push(v);
  return mean_interval(s);
}

std::string Metric::name() const {
  switch (kind) {
    case Kind::AvgSumRate: return "avg_sum_rate";
    case Kind::NetworkOp: return "network_op";
    case Kind::UserOp: return "user_op[" + std::to_string(user) + "]";
  }
  return "?";
}

Metric Metric::parse(const std::string& text) {
  if (text == "avg_sum_rate") return {Kind::AvgSumRate, 0};
  if (text == "network_op") return {Kind::NetworkOp, 0};
  constexpr std::string_view prefix = "user_op[";
  if (text.size() > prefix.size() + 1 && text.starts_with(prefix) && text.back() == ']') {
    const std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const auto user = static_cast<std::size_t>(std::stoull(digits));
      if (user >= 1) return {Kind::UserOp, user};
    }
  }
  throw ConfigError("unknown metric '" + text + "'");
}

void ResultTable::sort() {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.scheme_label != b.scheme_label) return a.scheme_label < b.scheme_label;
    if (a.metric != b.metric) return a.metric < b.metric;
    return a.snr_db < b.snr_db;
  });
}

void ResultTable::append(const ResultTable& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

}  // namespace fasrsma
