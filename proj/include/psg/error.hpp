#pragma once

#include <stdexcept>
#include <string>

namespace psg {

// Mixing elements of different groups, or points of different trees.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An operation was called outside its domain (e.g. an elliptic element where a
// loxodromic one is required).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bounded search ended without a verdict. Never a false positive.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured element cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified statement turned out false. Always fatal for a run.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + what
                                    : what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace psg
