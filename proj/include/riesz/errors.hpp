#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

/// Invalid user-supplied parameters (admissibility, ranges, amplitudes).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerically certified property failed to hold.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal inconsistency; indicates a bug rather than bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative method ran out of budget. Carries the best value reached.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best) : std::runtime_error(what), best_(best) {}
  double best() const { return best_; }

 private:
  double best_;
};

}  // namespace riesz
