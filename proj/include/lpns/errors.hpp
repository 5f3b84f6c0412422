#pragma once

#include <stdexcept>
#include <string>

namespace lpns {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input parameters, inconsistent grids, unreadable files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A field violates one of its type invariants (e.g. Hermitian symmetry).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a closed-form evaluator.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A ratio whose denominator vanishes identically (e.g. zero field).
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

// Time step exceeds the CFL bound; carries the largest admissible step.
class StepSizeError : public Error {
 public:
  StepSizeError(const std::string& what, double admissible_dt)
      : Error(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

// Non-finite values appeared in the solution.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace lpns
