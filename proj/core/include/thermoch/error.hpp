#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thermoch {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An iterative method failed to converge (root finder, Newton solve).
class NumericFailure : public Error {
public:
  using Error::Error;
};

/// A time step could not be completed; the driver reacts by halving dt.
class StepFailure : public NumericFailure {
public:
  using NumericFailure::NumericFailure;
};

/// Inconsistent sizes, grids or parameters supplied by the caller.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// Argument outside the domain of an operator (e.g. a nonzero-mean input to N).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Data range incompatible with the domain of the monotone graph.
class CompatibilityError : public Error {
public:
  using Error::Error;
};

/// Malformed configuration text.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

/// A configuration that parsed correctly but violates one or more model
/// assumptions. Every entry of messages() is self-contained.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}

  const std::vector<std::string>& messages() const noexcept { return messages_; }

private:
  static std::string join(const std::vector<std::string>& m) {
    std::string out;
    for (const auto& s : m) {
      if (!out.empty()) out += '\n';
      out += s;
    }
    return out;
  }

  std::vector<std::string> messages_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace thermoch
