#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace genset {

/// Raised when an input exceeds the exact-computation caps of an operation.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed family or graph text. Carries the 1-based offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An operation needs a nonempty domain (e.g. at least one k-clique).
class EmptyDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace genset
