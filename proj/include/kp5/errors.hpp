#pragma once

#include <stdexcept>
#include <string>

namespace kp5 {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, run configuration or CLI input.
class ConfigError : public Error {
  using Error::Error;
};

/// Caller broke an operation's precondition (shape mismatch, off-mesh time, ...).
class ContractError : public Error {
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
  using Error::Error;
};

/// Field violates the zero-x-mean constraint.
class ConstraintError : public Error {
  using Error::Error;
};

/// Dyadic scale outside the grid's resolvable band.
class RangeError : public Error {
  using Error::Error;
};

/// Symbol or scale parameters outside their admissible region.
class ParameterError : public Error {
  using Error::Error;
};

/// Bilinear output would wrap around the frequency lattice.
class AliasingError : public Error {
  using Error::Error;
};

/// Quadrature or iteration failed to reach its tolerance.
class NumericalError : public Error {
  using Error::Error;
};

/// Non-finite values or runaway growth during time stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A probe's validity monitor tripped; its numbers are meaningless.
class ProbeInvalidError : public Error {
  using Error::Error;
};

/// An oracle could not resolve its own discretisation.
class OracleInvalidError : public Error {
  using Error::Error;
};

}  // namespace kp5
