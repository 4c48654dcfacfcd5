#pragma once

#include <stdexcept>
#include <string>

namespace gln {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input matrix failed the relative invertibility check.
class SingularInput : public Error {
 public:
  using Error::Error;
};

/// An intermediate row norm collapsed during orthonormalization.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

/// Matrix asymmetry exceeds the symmetric-solver tolerance.
class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// Jacobi sweeps exhausted before the off-diagonal mass converged.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Argument expected to be orthogonal is not, at the configured tolerance.
class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

/// A leading principal minor required to be positive is not.
class MinorNotPositive : public Error {
 public:
  MinorNotPositive(int first_failing, const std::string& what)
      : Error(what), first_failing_minor(first_failing) {}
  int first_failing_minor;  // 1-based order of the first non-positive minor
};

/// A posterior consistency check on a constructed object failed.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// A value required to be strictly positive is zero or negative.
class NonPositiveEntry : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible orders/lengths.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Exterior-power degree outside [0, n].
class InvalidDegree : public Error {
 public:
  using Error::Error;
};

/// Highest-weight vector violates the dominance conditions.
class InvalidWeight : public Error {
 public:
  using Error::Error;
};

/// The orthogonal-group sampler failed repeatedly (practically unreachable).
class SamplerFailure : public Error {
 public:
  using Error::Error;
};

/// Operation only defined for a specific matrix order.
class InvalidOrder : public Error {
 public:
  using Error::Error;
};

}  // namespace gln
