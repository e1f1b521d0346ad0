// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fasrsma {

/// Invalid scenario or scheme parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A channel vector (or a sum of channel directions) has zero norm.
class DegenerateChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stacked user channels are rank deficient; zero-forcing is undefined.
/// The engine resamples the trial when it sees this.
class SingularChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fasrsma
