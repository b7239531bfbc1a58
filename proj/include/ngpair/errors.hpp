#pragma once

#include <stdexcept>
#include <string>

namespace ngpair {

/// Invalid input parameter (maps to CLI exit status 2).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A network without edges cannot host the dynamics or define link fractions.
class DegenerateNetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration left the simplex by more than the guard tolerance.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Bisection found no classification change on the search interval.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ngpair
