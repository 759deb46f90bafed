#pragma once

#include <stdexcept>
#include <string>

namespace kplane {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (bad k/d, x_d = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integral or norm does not converge for the given exponents.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A quantity is undefined for the input (ratio of a zero profile, ...).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace kplane
