#pragma once

#include <stdexcept>
#include <string>

namespace flatsphere {

enum class ErrorCode {
  Domain,
  UnsupportedDimension,
  Overflow,
  RankDeficient,
  NotPositiveDefinite,
  VerificationFailed,
  DimensionMismatch,
  InsufficientData,
  ResourceLimit,
  Config,
  Io,
  Format,
  IndexOutOfRange,
  Eigensolver,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` carries the category the
/// C API and CLI map onto status values and exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace flatsphere
