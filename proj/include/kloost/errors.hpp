#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kloost {

// Bad construction parameters: m out of range, reducible or wrong-degree
// polynomial, malformed CLI input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DomainErrorKind {
  ZeroInverse,        // 1/0
  ZeroToNonpositive,  // 0^r with r <= 0
  UndefinedArgument,  // K(0)
};

const char* to_string(DomainErrorKind kind);

class DomainError : public std::domain_error {
 public:
  DomainError(DomainErrorKind kind, const std::string& what)
      : std::domain_error(what), kind_(kind) {}
  DomainErrorKind kind() const { return kind_; }

 private:
  DomainErrorKind kind_;
};

// Raised by the O(q^3) / O(q^4) routines when m exceeds their default guard
// and the caller did not pass force.
class CostGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  Syntax,
  MultipleVariables,
  NonDyadicExponent,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& msg);
  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
};

}  // namespace kloost
