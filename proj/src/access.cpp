// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/access.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "fasrsma/errors.hpp"

namespace fasrsma {

namespace {

constexpr double kRankTolerance = 1e-8;
constexpr double kCancelTolerance = 1e-9;
constexpr double kFractionSumTolerance = 1e-12;

inline double log2_1p(double sinr) noexcept { return std::log1p(sinr) / std::numbers::ln2; }

double norm2(std::span<const cplx> v) noexcept {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

// |h^H w|^2
double beam_gain(std::span<const cplx> h, std::span<const cplx> w) noexcept {
  cplx acc{};
  for (std::size_t l = 0; l < h.size(); ++l) acc += std::conj(h[l]) * w[l];
  return std::norm(acc);
}

void check_shape(const ChannelSet& channels) {
  if (channels.empty()) throw ConfigError("no user channels");
  const std::size_t l = channels.front().size();
  if (l == 0) throw ConfigError("empty channel vector");
  for (const auto& h : channels)
    if (h.size() != l) throw ConfigError("user channels differ in length");
}

}  // namespace

std::string_view to_string(Scheme s) noexcept { return s == Scheme::Rsma ? "RSMA" : "NOMA"; }

std::string_view to_string(PrecoderFamily f) noexcept {
  switch (f) {
    case PrecoderFamily::Siso: return "siso";
    case PrecoderFamily::HybridZfMrt: return "hybrid_zf_mrt";
    case PrecoderFamily::MrtOnly: return "mrt_only";
  }
  return "?";
}

std::string_view to_string(NomaRateRule r) noexcept {
  return r == NomaRateRule::SicDecodable ? "sic_decodable" : "own_sinr";
}

PrecoderFamily default_precoder(Scheme scheme, std::size_t tx_antennas) noexcept {
  if (tx_antennas <= 1) return PrecoderFamily::Siso;
  return scheme == Scheme::Rsma ? PrecoderFamily::HybridZfMrt : PrecoderFamily::MrtOnly;
}

std::vector<double> default_noma_fractions(std::size_t users) {
  switch (users) {
    case 1: return {1.0};
    case 2: return {0.8, 0.2};
    case 3: return {0.6, 0.3, 0.1};
    default:
      throw ConfigError("noma_power_fractions has no default for " + std::to_string(users) +
                        " users");
  }
}

double snr_to_power(double snr_db) noexcept { return std::pow(10.0, snr_db / 10.0); }

void SchemeConfig::validate(std::size_t users, std::size_t tx_antennas) const {
  if (users == 0) throw ConfigError("users: must be >= 1");
  if (tx_antennas == 0) throw ConfigError("tx_antennas: must be >= 1");
  if (!std::isfinite(snr_db)) throw ConfigError("snr_db: must be finite");
  switch (precoder) {
    case PrecoderFamily::Siso:
      if (tx_antennas != 1) throw ConfigError("tx_antennas: SISO requires L = 1");
      break;
    case PrecoderFamily::HybridZfMrt:
      if (scheme != Scheme::Rsma) throw ConfigError("precoder: hybrid ZF/MRT is an RSMA precoder");
      if (users > tx_antennas) throw ConfigError("users: K <= L violated");
      break;
    case PrecoderFamily::MrtOnly:
      if (scheme != Scheme::Noma) throw ConfigError("precoder: MRT-only is a NOMA precoder");
      break;
  }
  if (scheme == Scheme::Rsma) {
    if (!(common_power_fraction >= 0.0 && common_power_fraction <= 1.0))
      throw ConfigError("common_power_fraction: must lie in [0, 1]");
  } else {
    if (noma_power_fractions.size() != users)
      throw ConfigError("noma_power_fractions: need one fraction per user");
    double sum = 0.0;
    for (double a : noma_power_fractions) {
      if (!(a > 0.0)) throw ConfigError("noma_power_fractions: fractions must be positive");
      sum += a;
    }
    if (std::abs(sum - 1.0) > kFractionSumTolerance)
      throw ConfigError("noma_power_fractions: fractions must sum to 1");
  }
}

ChannelSet channel_vectors(std::span<const EffectiveChannel> effective) {
  ChannelSet out;
  out.reserve(effective.size());
  for (const auto& e : effective) out.push_back(e.h);
  return out;
}

std::vector<cplx> mrt_precoder(std::span<const cplx> h) {
  const double n = std::sqrt(norm2(h));
  if (!(n > 0.0)) throw DegenerateChannelError("mrt_precoder: zero channel");
  std::vector<cplx> w(h.begin(), h.end());
  for (auto& x : w) x /= n;
  return w;
}

CMatrix zf_precoders(const ChannelSet& channels) {
  check_shape(channels);
  const auto k = static_cast<Eigen::Index>(channels.size());
  const auto l = static_cast<Eigen::Index>(channels.front().size());
  if (k > l) throw ConfigError("zf_precoders: K <= L violated");

  // A = H^H has the user channels as columns. A = Q R gives
  // W = A (A^H A)^{-1} = Q R^{-H}.
  Eigen::MatrixXcd a(l, k);
  for (Eigen::Index u = 0; u < k; ++u)
    for (Eigen::Index r = 0; r < l; ++r) a(r, u) = channels[static_cast<std::size_t>(u)][static_cast<std::size_t>(r)];
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::MatrixXcd r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  double rmax = 0.0;
  double rmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < k; ++i) {
    rmax = std::max(rmax, std::abs(r(i, i)));
    rmin = std::min(rmin, std::abs(r(i, i)));
  }
  if (!(rmax > 0.0) || rmin < kRankTolerance * rmax)
    throw SingularChannelError("zf_precoders: stacked channels are rank deficient");

  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(l, k);
  // Solve R^H X = I (lower triangular), then W = Q X.
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(k, k);
  r.adjoint().triangularView<Eigen::Lower>().solveInPlace(x);
  Eigen::MatrixXcd w = q * x;

  CMatrix out(static_cast<std::size_t>(l), static_cast<std::size_t>(k));
  for (Eigen::Index u = 0; u < k; ++u) {
    const double n = w.col(u).norm();
    for (Eigen::Index row = 0; row < l; ++row)
      out(static_cast<std::size_t>(row), static_cast<std::size_t>(u)) = w(row, u) / n;
  }
  return out;
}

CommonPrecoder common_precoder(const ChannelSet& channels) {
  check_shape(channels);
  const std::size_t l = channels.front().size();
  std::vector<cplx> v(l);
  std::size_t nonzero = 0;
  for (const auto& h : channels) {
    const double n = std::sqrt(norm2(h));
    if (!(n > 0.0)) continue;
    ++nonzero;
    for (std::size_t i = 0; i < l; ++i) v[i] += h[i] / n;
  }
  if (nonzero == 0) throw DegenerateChannelError("common_precoder: all channels are zero");
  const double vn = std::sqrt(norm2(v));
  // Each summand has unit norm, so the scale of v is set by the user count.
  if (vn < kCancelTolerance * static_cast<double>(nonzero)) {
    for (const auto& h : channels)
      if (norm2(h) > 0.0) return {mrt_precoder(h), true};
  }
  for (auto& x : v) x /= vn;
  return {std::move(v), false};
}

LinkGains link_gains(const ChannelSet& channels, Scheme scheme, PrecoderFamily family) {
  check_shape(channels);
  const std::size_t k = channels.size();
  LinkGains g;
  g.users = k;
  g.cross.assign(k * k, 0.0);

  switch (family) {
    case PrecoderFamily::Siso: {
      if (channels.front().size() != 1) throw ConfigError("SISO precoding needs L = 1");
      // Scalar "precoders" equal to one: every stream reaches user k with |h_k|^2.
      for (std::size_t u = 0; u < k; ++u) {
        const double gu = std::norm(channels[u][0]);
        for (std::size_t j = 0; j < k; ++j) g.cross[u * k + j] = gu;
        if (scheme == Scheme::Rsma) g.common.push_back(gu);
      }
      break;
    }
    case PrecoderFamily::HybridZfMrt: {
      const CMatrix w = zf_precoders(channels);
      const std::size_t l = w.rows();
      for (std::size_t j = 0; j < k; ++j) {
        std::span<const cplx> wj = w.data().subspan(j * l, l);
        for (std::size_t u = 0; u < k; ++u) g.cross[u * k + j] = beam_gain(channels[u], wj);
      }
      if (scheme == Scheme::Rsma) {
        const CommonPrecoder pc = common_precoder(channels);
        g.common_fallback = pc.fallback;
        for (std::size_t u = 0; u < k; ++u) g.common.push_back(beam_gain(channels[u], pc.p));
      }
      break;
    }
    case PrecoderFamily::MrtOnly: {
      for (std::size_t j = 0; j < k; ++j) {
        const auto wj = mrt_precoder(channels[j]);
        for (std::size_t u = 0; u < k; ++u) g.cross[u * k + j] = beam_gain(channels[u], wj);
      }
      if (scheme == Scheme::Rsma) {
        const CommonPrecoder pc = common_precoder(channels);
        g.common_fallback = pc.fallback;
        for (std::size_t u = 0; u < k; ++u) g.common.push_back(beam_gain(channels[u], pc.p));
      }
      break;
    }
  }

  if (scheme == Scheme::Noma) {
    g.order.resize(k);
    std::iota(g.order.begin(), g.order.end(), std::size_t{0});
    std::stable_sort(g.order.begin(), g.order.end(), [&](std::size_t a, std::size_t b) {
      return g.gain(a, a) < g.gain(b, b);
    });
  }
  return g;
}

namespace {

void rsma_at_power(const LinkGains& g, const SchemeConfig& cfg, double power, RateVector& out) {
  const std::size_t k = g.users;
  const double t = cfg.common_power_fraction;
  const double common_power = power * t;
  const double private_power = power * (1.0 - t) / static_cast<double>(k);

  out.private_rates.assign(k, 0.0);
  out.per_user_common_rates.assign(k, 0.0);
  out.sic_chain.clear();
  double common = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < k; ++u) {
    double others = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != u) others += g.gain(u, j);
    const double own = g.gain(u, u);
    const double all = others + own;
    const double sinr_c = common_power * g.common[u] / (private_power * all + 1.0);
    out.per_user_common_rates[u] = log2_1p(sinr_c);
    common = std::min(common, out.per_user_common_rates[u]);
    const double sinr_p = private_power * own / (private_power * others + 1.0);
    out.private_rates[u] = log2_1p(sinr_p);
  }
  out.common_rate = common;
}

void noma_at_power(const LinkGains& g, const SchemeConfig& cfg, double power, RateVector& out) {
  const std::size_t k = g.users;
  const auto& alpha = cfg.noma_power_fractions;
  out.common_rate = 0.0;
  out.per_user_common_rates.assign(k, 0.0);
  out.private_rates.assign(k, std::numeric_limits<double>::infinity());
  out.sic_chain.resize(k);

  // Position p in the order decodes positions 0..p; stronger positions
  // (> i) are interference while message i is being decoded.
  for (std::size_t p = 0; p < k; ++p) {
    const std::size_t user = g.order[p];
    auto& chain = out.sic_chain[user];
    chain.clear();
    for (std::size_t i = 0; i <= p; ++i) {
      double interference = 0.0;
      for (std::size_t j = i + 1; j < k; ++j) interference += power * alpha[j] * g.gain(user, g.order[j]);
      const double sinr = power * alpha[i] * g.gain(user, g.order[i]) / (interference + 1.0);
      const std::size_t owner = g.order[i];
      const double rate = log2_1p(sinr);
      chain.push_back({owner, rate});
      if (cfg.noma_rate_rule == NomaRateRule::SicDecodable) {
        out.private_rates[owner] = std::min(out.private_rates[owner], rate);
      } else if (i == p) {
        out.private_rates[owner] = rate;
      }
    }
  }
}

}  // namespace

void rates_at_power(const LinkGains& gains, const SchemeConfig& config, double power,
                    RateVector& out) {
  if (config.scheme == Scheme::Rsma) {
    if (gains.common.size() != gains.users) throw ConfigError("link gains lack a common beam");
    rsma_at_power(gains, config, power, out);
  } else {
    if (gains.order.size() != gains.users) throw ConfigError("link gains lack a NOMA order");
    noma_at_power(gains, config, power, out);
  }
}

RateVector rsma_rates(std::span<const EffectiveChannel> effective, const SchemeConfig& config) {
  if (config.scheme != Scheme::Rsma) throw ConfigError("rsma_rates: scheme is not RSMA");
  if (effective.empty()) throw ConfigError("rsma_rates: no users");
  config.validate(effective.size(), effective.front().h.size());
  const LinkGains g = link_gains(channel_vectors(effective), Scheme::Rsma, config.precoder);
  RateVector out;
  rates_at_power(g, config, snr_to_power(config.snr_db), out);
  return out;
}

RateVector noma_rates(std::span<const EffectiveChannel> effective, const SchemeConfig& config) {
  if (config.scheme != Scheme::Noma) throw ConfigError("noma_rates: scheme is not NOMA");
  if (effective.empty()) throw ConfigError("noma_rates: no users");
  config.validate(effective.size(), effective.front().h.size());
  const LinkGains g = link_gains(channel_vectors(effective), Scheme::Noma, config.precoder);
  RateVector out;
  rates_at_power(g, config, snr_to_power(config.snr_db), out);
  return out;
}

}  // namespace fasrsma
