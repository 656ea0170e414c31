#ifndef TCI_ERRORS_HPP
#define TCI_ERRORS_HPP

#include <stdexcept>

namespace tci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-positive density or pressure.
class InadmissibleState : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// Argument outside the valid domain (coordinates, shock angles, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Bad run configuration: unknown key, missing value, inconsistent settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The time march produced a state it could not recover from.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Not enough cells on one side of the shock for a diagnostics window.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Output files could not be created, or would be overwritten.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tci

#endif  // TCI_ERRORS_HPP
