#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ringopto {

/// 17 significant digits, enough for any double to parse back unchanged.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical input violates its domain. `field()` names the offending field.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class UnstableSystem : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class StepSizeRejected : public Error {
 public:
  using Error::Error;
};

class OddDimension : public Error {
 public:
  using Error::Error;
};

class NonSymmetric : public Error {
 public:
  using Error::Error;
};

class PairingFailure : public Error {
 public:
  using Error::Error;
};

class UnphysicalState : public Error {
 public:
  using Error::Error;
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

class InvalidSweep : public Error {
 public:
  using Error::Error;
};

/// Raised when a single sweep grid point fails; carries the axis value.
class SweepPointError : public Error {
 public:
  SweepPointError(double axis_value, const std::string& what)
      : Error("at axis value " + format_double(axis_value) + ": " + what),
        axis_value_(axis_value) {}
  double axis_value() const noexcept { return axis_value_; }

 private:
  double axis_value_;
};

/// Configuration file problem. `key()` names the offending key (may be empty).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace ringopto
