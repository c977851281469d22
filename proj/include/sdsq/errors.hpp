#pragma once

#include <stdexcept>
#include <string>

namespace sdsq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument (squareness, Hermiticity, normalization) failed.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Matrix, vector or qubit-count sizes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula (b <= 0, M <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested operator is not representable in the chosen basis.
class UnsupportedBasisError : public Error {
 public:
  using Error::Error;
};

/// Mass above the Nariai bound: no black-hole horizon exists.
class NoHorizonError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative method hit its cap; `best_estimate()` holds the last value.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

/// Every optimizer start of a VQE run failed.
class RunError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdsq
