#pragma once

#include <stdexcept>
#include <string>

namespace agewise {

// Base of every error raised by the library. `kind()` is a stable,
// machine-parsable tag used as the CLI error prefix.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error("invalid-argument", what) {}
};

// Adaptive quadrature ran out of subdivisions; carries the best estimate.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double best_estimate,
                 double abs_error_estimate)
      : Error("non-convergence", what),
        best_estimate_(best_estimate),
        abs_error_estimate_(abs_error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double abs_error_estimate() const noexcept { return abs_error_estimate_; }

 private:
  double best_estimate_;
  double abs_error_estimate_;
};

class NoSignChange : public Error {
 public:
  explicit NoSignChange(const std::string& what)
      : Error("no-sign-change", what) {}
};

// Evaluation requested where the survival function has (numerically) vanished.
class SupportExceeded : public Error {
 public:
  explicit SupportExceeded(const std::string& what)
      : Error("support-exceeded", what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error("validation-error", what) {}
};

class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& what)
      : Error("hypothesis-violation", what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse-error", what) {}
};

}  // namespace agewise
