#pragma once

#include <stdexcept>
#include <string>

namespace pigp {

/// Operands from different groups, malformed arguments.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A search or construction exceeded its configured bound.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Catalog or selector text could not be interpreted.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}

  int line() const { return line_; }

private:
  int line_;
};

} // namespace pigp
