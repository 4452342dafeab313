#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace exactpde {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Misuse of the API: mismatched jet layouts, out-of-range multi-indices, unbound variables.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain (ln of a non-positive value, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by (or reciprocal of) something with a zero leading value.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A family constraint was violated at construction time.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error("parse error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Adaptive quadrature gave up before reaching the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& message, double estimate, double error_bound)
      : Error(message), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Malformed or inconsistent solution config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace exactpde
