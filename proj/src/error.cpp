#include "bivex/error.hpp"

namespace bivex {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveTail: return "NonPositiveTail";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
    case ErrorCode::InvalidFit: return "InvalidFit";
    case ErrorCode::NonPositiveArg: return "NonPositiveArg";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadTuning: return "BadTuning";
    case ErrorCode::NotHalfplane: return "NotHalfplane";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::BadN: return "BadN";
    case ErrorCode::BadRect: return "BadRect";
    case ErrorCode::RetentionTooSmall: return "RetentionTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
  }
  return "Unknown";
}

ErrorKind kind_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::EmptyAfterFilter:
    case ErrorCode::LengthMismatch:
    case ErrorCode::NonPositiveTail:
    case ErrorCode::NonFiniteValue:
      return ErrorKind::Data;
    case ErrorCode::InvalidFit:
    case ErrorCode::BadTuning:
    case ErrorCode::NotHalfplane:
    case ErrorCode::BadGrid:
    case ErrorCode::BadN:
    case ErrorCode::BadRect:
    case ErrorCode::BadK:
    case ErrorCode::ConfigError:
    case ErrorCode::RetentionTooSmall:
      return ErrorKind::Config;
    case ErrorCode::NonPositiveGamma:
    case ErrorCode::NonPositiveArg:
      return ErrorKind::Numeric;
  }
  return ErrorKind::Numeric;
}

}  // namespace bivex
