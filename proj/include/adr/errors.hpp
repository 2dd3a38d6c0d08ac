#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments that break a documented precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Input text (TLE, instance file, QUBO file, bitstring) could not be parsed.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Well-formed input whose content is physically or logically unusable.
class DataError : public Error {
public:
  using Error::Error;
};

/// A size guard on an exponential procedure refused to run.
class GuardError : public Error {
public:
  using Error::Error;
};

}  // namespace adr
