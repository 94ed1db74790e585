#pragma once

#include <stdexcept>
#include <string>

namespace levito {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the physical domain of an operation (bad geometry,
/// non-positive power, unknown mode kind, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Configuration file problems. The message always names the key path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key + ": " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Failures of numerical procedures: non-convergent quadrature, singular
/// systems, instability, unphysical results.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : NumericalError(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace levito
