#pragma once

#include <stdexcept>
#include <string>

namespace gravswap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical or dimensionless parameters outside the model's validity range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The requested state does not fit on the grid.
class GridSizingError : public Error {
 public:
  GridSizingError(const std::string& what, double suggested_half_extent)
      : Error(what), suggested_half_extent_(suggested_half_extent) {}
  double suggested_half_extent() const noexcept { return suggested_half_extent_; }

 private:
  double suggested_half_extent_;
};

/// Integrator failure: norm drift, boundary leakage, step underflow or
/// tolerance violation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration; `field()` carries the dotted key path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gravswap
