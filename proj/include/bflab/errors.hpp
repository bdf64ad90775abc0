#pragma once

#include <stdexcept>
#include <string>

namespace bflab {

/// Invalid user configuration (unknown key, inconsistent parameters, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The grid cannot represent the data sequence at index n without aliasing.
class CapacityError : public ConfigError {
 public:
  CapacityError(const std::string& what, int max_feasible_n)
      : ConfigError(what), max_feasible_n_(max_feasible_n) {}
  int max_feasible_n() const noexcept { return max_feasible_n_; }

 private:
  int max_feasible_n_;
};

/// The time integration produced non-finite values or violated its CFL guard.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace bflab
