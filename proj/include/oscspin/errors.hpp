#pragma once

#include <stdexcept>
#include <string>

namespace oscspin {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Quadrature could not reach the requested tolerance; carries the achieved
// error estimate so callers can report it instead of crashing.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved(achieved_error) {}
  double achieved;
};

// Time integration tripped a quality gate (trace drift, local error).
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, double at_time)
      : std::runtime_error(what), time(at_time) {}
  double time;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oscspin
