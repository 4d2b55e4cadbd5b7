#pragma once

#include <stdexcept>
#include <string>

namespace mmf {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameters or arguments outside a function's domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A numerical procedure could not deliver its contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature missed its tolerance; carries the best estimate found.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_bound)
      : NumericalError(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

class FactorizationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Circulant embedding produced a significantly negative eigenvalue.
class EmbeddingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmf
