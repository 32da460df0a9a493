#pragma once

#include <stdexcept>
#include <string>

namespace gcff {

// Bad arguments or values that violate a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A geometric quantity is undefined for the given points (e.g. an angle about
// a centre that coincides with one of its arms).
class DegenerateGeometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exhaustive routine was asked to enumerate more than it is allowed to.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " +
                                           what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gcff
