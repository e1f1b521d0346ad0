// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fluid-antenna port activation: choose which candidate port each user
// connects to its RF chain.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fasrsma/channel.hpp"

namespace fasrsma {

class PortStrategy {
 public:
  enum class Kind { MaxGain, Fixed };

  static PortStrategy max_gain() noexcept { return PortStrategy(Kind::MaxGain, 0); }
  static PortStrategy fixed(std::size_t index) noexcept { return PortStrategy(Kind::Fixed, index); }

  Kind kind() const noexcept { return kind_; }
  std::size_t fixed_index() const noexcept { return index_; }

  /// "max_gain" or "fixed:<i>".
  std::string to_string() const;

  friend bool operator==(const PortStrategy&, const PortStrategy&) = default;

 private:
  PortStrategy(Kind kind, std::size_t index) noexcept : kind_(kind), index_(index) {}
  Kind kind_;
  std::size_t index_;
};

/// Selected-port channel of one user: h_k = column chosen_port of H_k.
struct EffectiveChannel {
  std::vector<cplx> h;  // length L
  std::size_t chosen_port = 0;
};

/// MaxGain: argmax_n sum_l |H(l, n)|^2, lowest index on ties.
/// Fixed(i): i. Throws ConfigError if i >= N.
std::size_t select_port(const UserChannel& channel, const PortStrategy& strategy);

/// Same, reusing caller-provided scratch of at least N doubles.
std::size_t select_port(const UserChannel& channel, const PortStrategy& strategy,
                        std::span<double> scratch);

/// Applies select_port to every user independently.
std::vector<EffectiveChannel> effective_channels(const ChannelRealization& realization,
                                                 const PortStrategy& strategy);

/// Squared Euclidean norm of an effective channel.
double channel_gain(std::span<const cplx> h) noexcept;

}  // namespace fasrsma
