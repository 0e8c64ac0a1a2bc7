#pragma once

#include <stdexcept>
#include <string>

namespace magsync {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration problems. The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A key that is not part of the documented schema.
class UnknownKey : public ConfigError {
 public:
  explicit UnknownKey(const std::string& key)
      : ConfigError("unknown key: " + key), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A value outside its admissible range. `key()` names the offending field.
class RangeError : public ConfigError {
 public:
  RangeError(const std::string& key, const std::string& why)
      : ConfigError(key + ": " + why), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// Numerical failures. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An integration step produced a non-finite component.
class StepDiverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Both quadratures of a mode vanish, so its phase is undefined.
class PhaseUndefined : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The bracket of the closed-form synchronization measure is not positive.
class DenominatorNonpositive : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EmptyWindow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// File-system failure; the message carries the path. Exit code 4.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace magsync
