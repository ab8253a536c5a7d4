#pragma once

#include <stdexcept>
#include <string>

namespace chemonet {

/// Malformed topology: unknown arc ids, dangling arc ends, wrong matrix sizes.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Well-formed network whose coefficients violate a physical condition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The time step is incompatible with the arc lengths (h = k*lambda/nu).
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad run configuration (parse errors, unknown presets, degenerate setups).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an analytic oracle is not met.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An oracle has more than one free parameter to fix.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chemonet
