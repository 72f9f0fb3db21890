#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mediagraph {

enum class ErrorCode {
  Io,
  Parse,
  DanglingReference,
  DuplicateId,
  MissingField,
  UnknownId,
  Config,
  UndefinedMetric,
  Guard,
  Mismatch,
  InvalidValue,
};

/// Base error for everything the library throws on a violated contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed input line. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& detail)
      : Error(ErrorCode::Parse,
              file + ":" + std::to_string(line) + ": " + detail),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace mediagraph
