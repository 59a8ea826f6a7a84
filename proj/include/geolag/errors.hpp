#pragma once

#include <stdexcept>
#include <string>

namespace geolag {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors of different dimension combined in one expression.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A velocity that should be timelike and future-pointing is not.
class CausalityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid user input (scenario files, CLI flags). `field` names the offending entry.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Quadrature or integration failure. Carries whatever partial result exists.
class NumericsError : public Error {
 public:
  NumericsError(const std::string& what, double estimate = 0.0, double error_bound = 0.0)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

enum class JoinKind { Position, Kink };

/// Worldline pieces that do not meet continuously (position) or smoothly (direction).
class JoinError : public Error {
 public:
  JoinError(JoinKind kind, const std::string& what) : Error(what), kind_(kind) {}

  JoinKind kind() const noexcept { return kind_; }

 private:
  JoinKind kind_;
};

}  // namespace geolag
