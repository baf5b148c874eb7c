#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace retrorank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input file. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& key) : Error("not found: " + key), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The query has no index terms left after preprocessing.
class EmptyQueryError : public InvalidArgument {
 public:
  EmptyQueryError() : InvalidArgument("empty query: no terms after preprocessing") {}
};

/// Paired differences have zero sample variance, so t is undefined.
class ZeroVarianceError : public InvalidArgument {
 public:
  ZeroVarianceError() : InvalidArgument("paired differences have zero variance") {}
};

}  // namespace retrorank
