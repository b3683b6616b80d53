#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace limcov {

/// Raised when user-supplied data (a trace, decoder file, flag value) is
/// malformed or violates the precondition of a construction.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure tied to a particular line of an input file (1-based).
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An internal invariant of a construction failed. Never expected on valid
/// input; thrown instead of asserting so sweeps can report it.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const char* what) {
  if (!condition) throw InvariantViolation(what);
}

}  // namespace limcov
