// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/rng.hpp"

#include <cmath>
#include <numbers>

namespace fasrsma {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline double to_unit_open_closed(std::uint64_t bits) noexcept {
  // (k + 1) / 2^53 for k in [0, 2^53): never zero, so log() is safe.
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Block Philox4x32::block(std::uint64_t counter_lo,
                                    std::uint64_t counter_hi) const noexcept {
  Block c{static_cast<std::uint32_t>(counter_lo), static_cast<std::uint32_t>(counter_lo >> 32),
          static_cast<std::uint32_t>(counter_hi), static_cast<std::uint32_t>(counter_hi >> 32)};
  std::uint32_t k0 = key_[0];
  std::uint32_t k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

std::uint64_t hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t label_hash,
                   std::uint64_t trial_index) noexcept
    : gen_(splitmix64(seed ^ splitmix64(label_hash))), trial_(trial_index) {}

std::array<double, 2> TrialRng::next_uniform_pair() noexcept {
  const auto b = gen_.block(counter_++, trial_);
  const std::uint64_t u0 = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
  const std::uint64_t u1 = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
  return {to_unit_open_closed(u0), to_unit_open_closed(u1)};
}

std::complex<double> TrialRng::next_complex_normal() noexcept {
  const auto [u0, u1] = next_uniform_pair();
  const double r = std::sqrt(-std::log(u0));
  const double theta = 2.0 * std::numbers::pi * u1;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace fasrsma
