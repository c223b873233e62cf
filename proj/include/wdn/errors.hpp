#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wdn {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element was queried against a graph or weighting it does not belong to.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A tuning parameter or configuration value is out of its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range input data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input text that failed to parse; carries the 1-based line when known.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine produced a non-finite or otherwise unusable result.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace wdn
