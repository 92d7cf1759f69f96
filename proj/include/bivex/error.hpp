#pragma once

#include <stdexcept>
#include <string>

namespace bivex {

enum class ErrorCode {
  NonPositiveTail,
  BadK,
  NonPositiveGamma,
  InvalidFit,
  NonPositiveArg,
  LengthMismatch,
  BadTuning,
  NotHalfplane,
  BadGrid,
  BadN,
  BadRect,
  RetentionTooSmall,
  ParseError,
  EmptyAfterFilter,
  ConfigError,
  NonFiniteValue,
};

const char* to_string(ErrorCode code) noexcept;

// Broad class of an error, used by the CLI to pick an exit code.
enum class ErrorKind { Config, Data, Numeric };

ErrorKind kind_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bivex
