#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xroads {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates a domain invariant (see validate()).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Transmitter and receiver coincide, so the loss model diverges.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// The requested operation has no closed form for this fading family.
class UnsupportedDistribution : public Error {
 public:
  using Error::Error;
};

/// The operation requires a different MAC protocol.
class WrongMac : public Error {
 public:
  using Error::Error;
};

/// A position expected on road H or V lies off both roads.
class OffRoadPosition : public Error {
 public:
  using Error::Error;
};

/// The scenario does not satisfy the preconditions of a closed form.
class WrongScenario : public Error {
 public:
  using Error::Error;
};

/// Failures of the numerical machinery. The command line tool maps these to
/// exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class OrderTooHigh : public NumericError {
 public:
  using NumericError::NumericError;
};

class FitDegenerate : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Adaptive quadrature exhausted its subdivision budget. Carries the best
/// estimate and its error so callers may still decide to use it.
class ToleranceNotMet : public NumericError {
 public:
  ToleranceNotMet(const std::string& what, double estimate, double error)
      : NumericError(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace xroads
