#pragma once

#include <stdexcept>
#include <string>

namespace augtree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed a value outside an operation's domain (bad letter, empty IFS, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or specification text.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string field = {})
      : Error(format(message, line, field)), line_(line), field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& message, int line, const std::string& field) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + message;
  }

  int line_;
  std::string field_;
};

/// The configured vertex or solver budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// The operation does not apply to this kind of graph (quotient, non-equicontractive, ...).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A structural invariant was broken inside the library.
class InternalError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& message, double residual)
      : Error(message + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Component classification disagrees between two representatives of one class.
class ClassificationUnstable : public Error {
 public:
  using Error::Error;
};

}  // namespace augtree
