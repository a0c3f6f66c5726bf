#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace derange {

/// Operands live on different point sets.
class DegreeMismatch : public std::invalid_argument {
 public:
  DegreeMismatch(std::size_t expected, std::size_t got)
      : std::invalid_argument("degree mismatch: expected " + std::to_string(expected) + ", got " +
                              std::to_string(got)) {}
};

/// Malformed text input. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A configured order, index or work budget would be exceeded.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element enumeration requested for a group larger than the cap.
class OrderExceedsCap : public ResourceCapExceeded {
 public:
  using ResourceCapExceeded::ResourceCapExceeded;
};

class NotASubgroup : public std::invalid_argument {
 public:
  NotASubgroup() : std::invalid_argument("not a subgroup") {}
};

/// Input data that is well formed but mathematically inconsistent.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace derange
