#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncdlab {

/// Base of every error raised by the library. The CLI maps ValidationError
/// and ParseError to exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside the operation's domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (frequency list, matrix, Newick, config).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid UTF-8 under the strict decoding policy.
class DecodeError : public Error {
 public:
  explicit DecodeError(std::size_t offset)
      : Error("invalid UTF-8 sequence at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A compressed stream (or token list) that cannot be decoded.
class CorruptStreamError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncdlab
