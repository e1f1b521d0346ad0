// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/engine.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fasrsma/errors.hpp"
#include "fasrsma/kernels.hpp"

namespace fasrsma {

namespace {

struct BlockStats {
  // Indexed by SNR point.
  std::vector<RunningStats> sum_rate;
  std::vector<std::uint64_t> network_outages;
  std::vector<std::uint64_t> user_outages;  // snr * K + k
  std::uint64_t resampled = 0;
  std::uint64_t redraws = 0;
  std::uint64_t fallbacks = 0;
};

// Per-worker buffers reused across trials.
class TrialWorker {
 public:
  TrialWorker(const Scenario& s, const SpatialCovariance& cov, std::span<const double> powers)
      : s_(s), cov_(cov), powers_(powers), label_hash_(hash_label(s.label)) {
    realization_.users.assign(s.users, UserChannel(s.tx_antennas, cov.num_ports()));
    scratch_.resize(cov.num_ports());
    port_power_.resize(cov.num_ports());
    channels_.assign(s.users, std::vector<cplx>(s.tx_antennas));
    user_flags_.resize(s.users);
  }

  void run_block(std::uint64_t first, std::uint64_t last, BlockStats& out) {
    const std::size_t points = powers_.size();
    const std::size_t k = s_.users;
    out.sum_rate.assign(points, RunningStats{});
    out.network_outages.assign(points, 0);
    out.user_outages.assign(points * k, 0);

    for (std::uint64_t trial = first; trial < last; ++trial) {
      const LinkGains gains = draw_trial(trial, out);
      if (gains.common_fallback) ++out.fallbacks;
      for (std::size_t p = 0; p < points; ++p) {
        rates_at_power(gains, s_.scheme, powers_[p], rates_);
        out.sum_rate[p].push(sum_rate(rates_));
        if (outage_indicator_into(rates_, s_.thresholds, s_.scheme.scheme, user_flags_))
          ++out.network_outages[p];
        for (std::size_t u = 0; u < k; ++u) out.user_outages[p * k + u] += user_flags_[u];
      }
    }
  }

 private:
  LinkGains draw_trial(std::uint64_t trial, BlockStats& out) {
    TrialRng rng(s_.seed, label_hash_, trial);
    for (int attempt = 0; attempt <= kMaxResamplesPerTrial; ++attempt) {
      sample_channel_into(cov_, rng, realization_, scratch_);
      for (std::size_t u = 0; u < s_.users; ++u) {
        const auto& user = realization_.users[u];
        const std::size_t port = select_port(user, s_.strategy, port_power_);
        for (std::size_t l = 0; l < s_.tx_antennas; ++l) channels_[u][l] = user(l, port);
      }
      try {
        LinkGains g = link_gains(channels_, s_.scheme.scheme, s_.scheme.precoder);
        if (attempt > 0) {
          ++out.resampled;
          out.redraws += static_cast<std::uint64_t>(attempt);
        }
        return g;
      } catch (const SingularChannelError&) {
      } catch (const DegenerateChannelError&) {
      }
    }
    throw RunError("trial " + std::to_string(trial) + " of '" + s_.series_label() +
                   "' stayed singular after " + std::to_string(kMaxResamplesPerTrial) +
                   " redraws");
  }

  const Scenario& s_;
  const SpatialCovariance& cov_;
  std::span<const double> powers_;
  std::uint64_t label_hash_;
  ChannelRealization realization_;
  std::vector<cplx> scratch_;
  std::vector<double> port_power_;
  ChannelSet channels_;
  RateVector rates_;
  std::vector<std::uint8_t> user_flags_;
};

}  // namespace

RunOutput run_scenario(const Scenario& scenario, std::size_t workers) {
  scenario.validate();
  if (workers == 0) throw ConfigError("workers: must be >= 1");

  const SpatialCovariance cov = build_covariance(scenario.port_grid);
  const std::vector<double> snr_points = scenario.snr.points();
  std::vector<double> powers;
  for (double db : snr_points) powers.push_back(snr_to_power(db));

  const std::uint64_t trials = scenario.trials;
  const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<BlockStats> block_stats(blocks);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      TrialWorker worker(scenario, cov, powers);
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        const std::uint64_t first = b * kTrialBlock;
        worker.run_block(first, std::min(trials, first + kTrialBlock), block_stats[b]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };
  const std::size_t threads = std::min<std::uint64_t>(workers, blocks);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  // Merge in block order.
  const std::size_t points = snr_points.size();
  const std::size_t k = scenario.users;
  std::vector<RunningStats> sum_rate(points);
  std::vector<std::uint64_t> network(points, 0);
  std::vector<std::uint64_t> user(points * k, 0);
  RunDiagnostics diag;
  diag.kernels = std::string(kernels::active().name);
  for (const auto& b : block_stats) {
    for (std::size_t p = 0; p < points; ++p) {
      sum_rate[p].merge(b.sum_rate[p]);
      network[p] += b.network_outages[p];
    }
    for (std::size_t i = 0; i < user.size(); ++i) user[i] += b.user_outages[i];
    diag.resampled_trials += b.resampled;
    diag.redraws += b.redraws;
    diag.common_fallbacks += b.fallbacks;
  }
  if (diag.resampled_trials * 100 > trials)
    throw RunError("'" + scenario.series_label() + "': " + std::to_string(diag.resampled_trials) +
                   " of " + std::to_string(trials) +
                   " trials hit a singular channel (limit 1%); check the channel model");

  RunOutput out;
  out.diagnostics = diag;
  const std::string series = scenario.series_label();
  auto add = [&](double snr, Metric metric, const Estimate& e) {
    out.table.rows.push_back(
        {snr, series, metric, e.mean, e.ci_low, e.ci_high, trials, diag.resampled_trials});
  };
  for (std::size_t p = 0; p < points; ++p) {
    add(snr_points[p], {Metric::Kind::AvgSumRate, 0}, mean_interval(sum_rate[p]));
    add(snr_points[p], {Metric::Kind::NetworkOp, 0}, wilson_interval(network[p], trials));
    for (std::size_t u = 0; u < k; ++u)
      add(snr_points[p], {Metric::Kind::UserOp, u + 1}, wilson_interval(user[p * k + u], trials));
  }
  out.table.sort();
  return out;
}

RunOutput run_scenarios(std::span<const Scenario> scenarios, std::size_t workers) {
  RunOutput all;
  for (const auto& s : scenarios) {
    RunOutput one = run_scenario(s, workers);
    all.table.append(one.table);
    all.diagnostics.resampled_trials += one.diagnostics.resampled_trials;
    all.diagnostics.redraws += one.diagnostics.redraws;
    all.diagnostics.common_fallbacks += one.diagnostics.common_fallbacks;
    all.diagnostics.kernels = one.diagnostics.kernels;
  }
  all.table.sort();
  return all;
}

}  // namespace fasrsma
