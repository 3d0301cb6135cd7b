#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace windfeas {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
  ParseError(std::string file, std::size_t line, const std::string& what);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

/// Invalid run configuration or option combination.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A series has no usable observation.
class AllMissingError : public Error {
public:
  using Error::Error;
};

/// An iterative estimator failed to converge.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

}  // namespace windfeas
