#pragma once

#include <stdexcept>
#include <string>

namespace ncfinfer {

/// Base of every error raised by this library. `kind()` is the short,
/// stable tag used in machine-readable error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message) : Error("argument", message) {}
};

/// Contradictory observations: one input pattern mapped to both outputs.
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& message) : Error("inconsistency", message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& message) : Error("capacity", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& message) : Error("invariant", message) {}
};

}  // namespace ncfinfer
