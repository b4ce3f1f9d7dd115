#pragma once

#include <stdexcept>
#include <string>

namespace dilcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input larger (or smaller) than an operation supports.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Model parameter out of range (rates, probabilities, counts).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Graph of the wrong family or dilution mode for the operation.
class KindError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or linear solve that did not reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration or command line.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace dilcp
