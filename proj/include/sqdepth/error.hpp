#pragma once

#include <stdexcept>
#include <string>

namespace sqdepth {

enum class ErrorCode {
  IndexOutOfRange,
  UnitIdeal,
  Parse,
  InvalidPair,
  InvalidArgument,
  ZeroModule,
  GuardExceeded,
  EmptyLeftSide,
  NotNormalized,
  TooLarge,
  NotApplicable,
  NoKernel,
  NotEquigenerated,
  Principal,
  NoXnMultiples,
  Unsatisfiable,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sqdepth
