#pragma once

#include <stdexcept>
#include <string>

namespace morreykit {

/// Invalid experiment setup (bad grid parameters, malformed config, ...).
/// Maps to CLI exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An exponent or weight-class hypothesis of a verification case is not met.
/// Maps to CLI exit code 3.
struct gate_error : std::runtime_error {
  explicit gate_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace morreykit
