#pragma once

#include <stdexcept>
#include <string>

namespace udw {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a physical parameter or state was violated.
/// The message names the offending field.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
/// Carries the best estimate obtained so far and the achieved error bound.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double achieved_error)
      : Error(what), best_estimate(best_estimate), achieved_error(achieved_error) {}

  double best_estimate;
  double achieved_error;
};

/// Bracketing root finder given an invalid bracket or failed to converge.
class RootFindError : public Error {
 public:
  using Error::Error;
};

/// Least-squares extraction of series constants exceeded its residual tolerance.
class FitError : public Error {
 public:
  FitError(const std::string& what, double residual) : Error(what), residual(residual) {}

  double residual;
};

/// File or stream operation failed; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace udw
