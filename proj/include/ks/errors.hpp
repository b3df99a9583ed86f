#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ks {

/// Base of every failure the library reports. Each subclass carries the
/// process exit code the CLI maps it to.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
  virtual const char* category() const noexcept = 0;
};

/// Inconsistent configuration or violated precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
  const char* category() const noexcept override { return "invalid_config"; }
};

/// Malformed input file; the message names the offending line.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const char* category() const noexcept override { return "parse_error"; }

 private:
  std::size_t line_;
};

/// The contraction condition 4*eta*|x0| < 1 does not hold.
class GateError : public Error {
 public:
  GateError(const std::string& what, double product) : Error(what), product_(product) {}
  double product() const noexcept { return product_; }
  int exit_code() const noexcept override { return 3; }
  const char* category() const noexcept override { return "smallness_violated"; }

 private:
  double product_;
};

/// Picard iteration ran out of iterations; keeps the residual history.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }
  int exit_code() const noexcept override { return 4; }
  const char* category() const noexcept override { return "non_convergence"; }

 private:
  std::vector<double> residuals_;
};

/// Reference integrator produced a non-finite state.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }
  int exit_code() const noexcept override { return 5; }
  const char* category() const noexcept override { return "oracle_instability"; }

 private:
  double last_good_time_;
};

/// Too few spectral shells above the noise floor to fit a decay rate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 6; }
  const char* category() const noexcept override { return "insufficient_decay_data"; }
};

/// An empirically checked inequality was violated.
class EstimateViolation : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 7; }
  const char* category() const noexcept override { return "estimate_violated"; }
};

}  // namespace ks
