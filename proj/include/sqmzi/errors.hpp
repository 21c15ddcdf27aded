#pragma once

#include <stdexcept>
#include <string>

namespace sqmzi {

/// Base class for all sqmzi errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the domain of the requested quantity (zero coherent
/// amplitude where a nonzero one is required, epsilon >= 1 in the
/// optimal-precision formula, and similar).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix violates the uncertainty relation det(sigma) >= 1
/// beyond tolerance.
class UnphysicalState : public Error {
 public:
  using Error::Error;
};

/// Mixed-state QFIM formula called where the state is pure (or too close
/// to pure for the formula to be evaluated reliably).
class PureStateRegion : public Error {
 public:
  using Error::Error;
};

/// Pure-point / pure-limit QFIM formula called away from a purity point.
class NotAtPurePoint : public Error {
 public:
  using Error::Error;
};

/// A cutoff-sensitivity re-run of a spectral sum disagreed with the
/// primary run; the result cannot be trusted at the requested accuracy.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

}  // namespace sqmzi
