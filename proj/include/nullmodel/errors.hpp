#pragma once

#include <stdexcept>
#include <string>

namespace nullmodel {

// Parameter outside the mathematical domain of an operation (e.g. tau not in (2,3)).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Graph construction received an invalid vertex id.
class StructuralError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace nullmodel
