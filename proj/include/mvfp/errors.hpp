#pragma once

#include <stdexcept>
#include <string>

namespace mvfp {

// Stable error codes; mirrored one-to-one by the C API status values.
enum class ErrorCode : int {
  Ok = 0,
  ParseError = 1,
  ValidationError = 2,
  MixedMode = 3,
  IncompatiblePoints = 4,
  EmptySet = 5,
  LevelMismatch = 6,
  LevelCapExceeded = 7,
  CodomainViolation = 8,
  NegativeArgument = 9,
  EmptyProbeSet = 10,
  NoProbesRightOfT0 = 11,
  ZeroDistancePair = 12,
  BoundUnachievable = 13,
  DomainEscape = 14,
  DivisionByZero = 15,
  PrecisionExhausted = 16,
  InvalidArgument = 17,
  IoError = 18,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mvfp
