#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmfa {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Vector length does not match the problem size.
class DimensionError : public Error {
public:
  DimensionError(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

private:
  std::size_t expected_;
  std::size_t actual_;
};

// Bad argument or parameter value (schedule, generator spec, solver params).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Requested conversion is not defined for this problem, e.g. a cut value
// for a problem carrying local fields.
class UnsupportedConversion : public Error {
public:
  using Error::Error;
};

// Instance too large for exhaustive enumeration.
class SizeLimitError : public Error {
public:
  SizeLimitError(std::size_t n, std::size_t limit)
      : Error("problem size " + std::to_string(n) +
              " exceeds enumeration limit " + std::to_string(limit)) {}
};

enum class ParseErrorKind {
  BadHeader,
  CountMismatch,
  IndexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  BadToken,
  UnknownKey,
};

inline const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::BadHeader: return "bad header";
    case ParseErrorKind::CountMismatch: return "edge count mismatch";
    case ParseErrorKind::IndexOutOfRange: return "vertex index out of range";
    case ParseErrorKind::SelfLoop: return "self-loop";
    case ParseErrorKind::DuplicateEdge: return "duplicate edge";
    case ParseErrorKind::BadToken: return "non-numeric token";
    case ParseErrorKind::UnknownKey: return "unknown key";
  }
  return "parse error";
}

// Text input rejected. Line numbers are 1-based; 0 means end of input.
class ParseError : public Error {
public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + to_string(kind) +
              (detail.empty() ? std::string{} : ": " + detail)),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace nmfa
