#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmv {

enum class Errc {
  NoPrimeInRange,
  NotInvertible,
  TooLarge,
  OrderUnavailable,
  DimMismatch,
  RingMismatch,
  MagnitudeOverflow,
  NoWitness,
  FieldTooSmall,
  DegeneratePoints,
  TooLargeForOracle,
  NotAllZeroesForm,
  CapExceeded,
  ParseError,
  ConfigError,
  UsageError,
};

const char* errc_name(Errc c);

/// Library-wide error type. `line`/`column` are 1-based and only set for ParseError.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

  std::size_t line = 0;
  std::size_t column = 0;

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

[[noreturn]] inline void fail_parse(const std::string& msg, std::size_t line, std::size_t column) {
  Error e(Errc::ParseError, msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")");
  e.line = line;
  e.column = column;
  throw e;
}

}  // namespace mmv
