#pragma once

#include <stdexcept>
#include <string>

namespace thermobound {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside the documented domain of an operation (T <= 0, non-Hermitian input, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Operands live in spaces of different dimension.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A computation produced a result that fails its own consistency checks
/// (solver non-convergence, Wronskian drift, degenerate denominators).
class NumericalError : public Error {
  public:
    using Error::Error;
};

} // namespace thermobound
