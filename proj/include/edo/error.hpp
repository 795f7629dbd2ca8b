#pragma once

#include <stdexcept>
#include <string>

namespace edo {

enum class ErrorCode {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kParse = 3,
  kIo = 4,
  kCapExceeded = 5,
  kUnsupported = 6,
  kInternal = 7,
};

/// Exception type thrown by every module of the library.
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

}  // namespace edo
