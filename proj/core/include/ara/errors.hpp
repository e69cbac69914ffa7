#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ara {

// Precondition violated by a caller-supplied argument (dimension out of
// range, bad confidence level, f > N, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Model parameters that break a model invariant (h outside [0, .9],
// malformed triangular distribution, non-finite outcome floor).
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A non-finite value was fed into running statistics.
class InvalidSample : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Integer result does not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Configuration text failed to parse or validate. Carries the offending
// line (0 when not tied to a line) and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::size_t line = 0,
              std::string field = {})
      : std::runtime_error(format(message, line, field)),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            const std::string& field) {
    std::string out = "configuration error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " (" + field + ")";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string field_;
};

}  // namespace ara
