#pragma once

#include <stdexcept>
#include <string>

namespace equivote {

enum class ErrorCode {
  InvalidArgument,
  DegreeMismatch,
  Parse,
  Infeasible,         // a configured enumeration cap would be exceeded
  Overflow,           // group closure grew past max_order
  Precondition,       // e.g. monotone fast path on an uncertified rule
  NotEquitable,
  ConstructionFailed  // randomized construction ran out of attempts
};

const char* to_string(ErrorCode code) noexcept;

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

}  // namespace equivote
