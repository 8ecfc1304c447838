#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

// Invalid parameters, configuration, or call arguments. CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A covariance matrix violated the symplectic physicality bound. Carries the
// offending eigenvalue. CLI exit code 3.
class UnphysicalStateError : public std::runtime_error {
 public:
  UnphysicalStateError(const std::string& message, double nu_min)
      : std::runtime_error(message), nu_min_(nu_min) {}
  double nu_min() const noexcept { return nu_min_; }

 private:
  double nu_min_;
};

// Runtime numerical failure: degenerate measurement, root bracket too small,
// degenerate estimation. Per-cell in sweeps; CLI exit code 3 at top level.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvqkd
