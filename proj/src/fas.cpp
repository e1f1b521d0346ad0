// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/fas.hpp"

#include "fasrsma/errors.hpp"
#include "fasrsma/kernels.hpp"

namespace fasrsma {

std::string PortStrategy::to_string() const {
  return kind_ == Kind::MaxGain ? "max_gain" : "fixed:" + std::to_string(index_);
}

std::size_t select_port(const UserChannel& channel, const PortStrategy& strategy,
                        std::span<double> scratch) {
  const std::size_t n = channel.num_ports();
  if (n == 0 || channel.tx_antennas() == 0) throw ConfigError("select_port: empty channel");
  if (strategy.kind() == PortStrategy::Kind::Fixed) {
    if (strategy.fixed_index() >= n)
      throw ConfigError("fixed port index " + std::to_string(strategy.fixed_index()) +
                        " out of range for " + std::to_string(n) + " ports");
    return strategy.fixed_index();
  }
  if (n == 1) return 0;
  auto power = scratch.first(n);
  kernels::active().port_power(channel.data(), channel.tx_antennas(), n, power);
  return kernels::argmax_first(power);
}

std::size_t select_port(const UserChannel& channel, const PortStrategy& strategy) {
  std::vector<double> scratch(channel.num_ports());
  return select_port(channel, strategy, scratch);
}

std::vector<EffectiveChannel> effective_channels(const ChannelRealization& realization,
                                                 const PortStrategy& strategy) {
  std::vector<EffectiveChannel> out(realization.num_users());
  std::vector<double> scratch(realization.num_ports());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& user = realization.users[k];
    const std::size_t port = select_port(user, strategy, scratch);
    out[k].chosen_port = port;
    out[k].h.resize(user.tx_antennas());
    for (std::size_t l = 0; l < user.tx_antennas(); ++l) out[k].h[l] = user(l, port);
  }
  return out;
}

double channel_gain(std::span<const cplx> h) noexcept {
  double g = 0.0;
  for (const auto& v : h) g += std::norm(v);
  return g;
}

}  // namespace fasrsma
