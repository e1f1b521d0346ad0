// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace fasrsma {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Stateless apart from the counter: block(i) depends only on (key, i).
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t key) noexcept
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)} {}

  Block block(std::uint64_t counter_lo, std::uint64_t counter_hi = 0) const noexcept;

 private:
  std::array<std::uint32_t, 2> key_;
};

/// 64-bit FNV-1a.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Random stream for one Monte-Carlo trial.
///
/// The stream is keyed by (seed, label hash) and addressed by trial index in
/// the high counter word, so streams for different trials never overlap and
/// any trial can be regenerated in isolation. Each call to next_block()
/// consumes one Philox block (128 bits).
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t label_hash, std::uint64_t trial_index) noexcept;

  /// Two uniform doubles on (0, 1], 53 bits each, from one block.
  std::array<double, 2> next_uniform_pair() noexcept;

  /// Circularly-symmetric complex Gaussian with E|z|^2 = 1. Consumes exactly
  /// one block (Box-Muller on the two uniforms).
  std::complex<double> next_complex_normal() noexcept;

  std::uint64_t blocks_consumed() const noexcept { return counter_; }

 private:
  Philox4x32 gen_;
  std::uint64_t trial_;
  std::uint64_t counter_ = 0;
};

}  // namespace fasrsma
