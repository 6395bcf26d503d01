#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace modelsel {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: DSL syntax, CSV structure, JSON shape. Maps to CLI exit 2.
class SyntaxError : public Error {
public:
  using Error::Error;
};

/// Unreadable or undecodable input. Maps to CLI exit 2.
class IoError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that violates a domain rule. Maps to CLI exit 1.
class DomainError : public Error {
public:
  using Error::Error;
};

/// DSL syntax error carrying a 1-based source position and the tokens that
/// would have been accepted there.
class ParseError : public SyntaxError {
public:
  ParseError(std::size_t line, std::size_t column, std::string found,
             std::vector<std::string> expected);
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

} // namespace modelsel
