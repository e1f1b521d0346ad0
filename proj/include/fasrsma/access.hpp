// SPDX-License-Identifier: Apache-2.0
#pragma once

// Achievable rates of 1-layer rate-splitting (one common stream plus K
// private streams) and power-domain NOMA with successive interference
// cancellation. Noise power is normalized to one, so the transmit power P
// equals the linear SNR.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fasrsma/channel.hpp"
#include "fasrsma/fas.hpp"

namespace fasrsma {

enum class Scheme { Rsma, Noma };
enum class PrecoderFamily { Siso, HybridZfMrt, MrtOnly };

/// How the rate of a superposed NOMA message is set.
///  SicDecodable: min over every user that decodes it (its owner and all
///                stronger-ordered users), so every SIC stage succeeds.
///  OwnSinr:      the owner's own SINR only.
/// The two coincide for single-antenna transmission.
enum class NomaRateRule { SicDecodable, OwnSinr };

std::string_view to_string(Scheme s) noexcept;
std::string_view to_string(PrecoderFamily f) noexcept;
std::string_view to_string(NomaRateRule r) noexcept;

/// Family implied by scheme and tx antenna count: Siso for L = 1,
/// otherwise HybridZfMrt for RSMA and MrtOnly for NOMA.
PrecoderFamily default_precoder(Scheme scheme, std::size_t tx_antennas) noexcept;

/// Weakest-first NOMA power fractions used when none are configured.
/// Defined for K <= 3; throws ConfigError otherwise.
std::vector<double> default_noma_fractions(std::size_t users);

struct SchemeConfig {
  Scheme scheme = Scheme::Rsma;
  double snr_db = 0.0;
  double common_power_fraction = 0.5;
  std::vector<double> noma_power_fractions;  // weakest-ordered user first
  PrecoderFamily precoder = PrecoderFamily::Siso;
  NomaRateRule noma_rate_rule = NomaRateRule::SicDecodable;

  /// Throws ConfigError naming the offending field.
  void validate(std::size_t users, std::size_t tx_antennas) const;
};

/// 10^(snr_db / 10).
double snr_to_power(double snr_db) noexcept;

/// One decode step of a NOMA receiver: the message of `owner` decoded at
/// `rate` bits/s/Hz.
struct SicDecode {
  std::size_t owner = 0;
  double rate = 0.0;
};

struct RateVector {
  double common_rate = 0.0;                   // RSMA only
  std::vector<double> private_rates;          // per user, bits/s/Hz
  std::vector<double> per_user_common_rates;  // RSMA, before the min
  /// NOMA only: per user, the messages it decodes in order, weakest-ordered
  /// first and its own message last.
  std::vector<std::vector<SicDecode>> sic_chain;
};

using ChannelSet = std::vector<std::vector<cplx>>;

/// Collects the selected-port vectors.
ChannelSet channel_vectors(std::span<const EffectiveChannel> effective);

/// h / ||h||. Throws DegenerateChannelError for a zero vector.
std::vector<cplx> mrt_precoder(std::span<const cplx> h);

/// Unit-norm zero-forcing precoders, column k of the L x K result being the
/// normalized k-th column of H^H (H H^H)^{-1}, where row k of H is h_k^H.
/// Throws ConfigError if K > L and SingularChannelError if H is rank
/// deficient (smallest-to-largest R diagonal ratio of the QR below 1e-8).
CMatrix zf_precoders(const ChannelSet& channels);

struct CommonPrecoder {
  std::vector<cplx> p;
  /// Set when the summed channel directions cancelled and p fell back to
  /// mrt_precoder(h_1).
  bool fallback = false;
};

/// Normalized sum of the per-user channel directions h_k / ||h_k||.
CommonPrecoder common_precoder(const ChannelSet& channels);

/// Beam gains of one channel realization, independent of transmit power.
/// cross(k, j) = |h_k^H w_j|^2; common(k) = |h_k^H p_c|^2 (RSMA only).
struct LinkGains {
  std::size_t users = 0;
  std::vector<double> cross;   // row-major K x K
  std::vector<double> common;  // length K, empty for NOMA
  /// NOMA decoding order: users by ascending cross(k, k), ties by index.
  std::vector<std::size_t> order;
  bool common_fallback = false;

  double gain(std::size_t k, std::size_t j) const noexcept { return cross[k * users + j]; }
};

/// Builds precoders for `family` and evaluates the gains. Propagates
/// precoder errors.
LinkGains link_gains(const ChannelSet& channels, Scheme scheme, PrecoderFamily family);

/// Rates at linear transmit power `power`; reuses `out`'s storage.
void rates_at_power(const LinkGains& gains, const SchemeConfig& config, double power,
                    RateVector& out);

RateVector rsma_rates(std::span<const EffectiveChannel> effective, const SchemeConfig& config);
RateVector noma_rates(std::span<const EffectiveChannel> effective, const SchemeConfig& config);

}  // namespace fasrsma
