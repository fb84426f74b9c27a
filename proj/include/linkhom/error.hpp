#pragma once

#include <stdexcept>
#include <string>

namespace linkhom {

enum class ErrorCode {
  invalid_argument,
  parse,
  regime,
  cap_exceeded,
  nesting_undetermined,
  trivial_class,
  not_a_cycle,
  ring_mismatch,
  precondition,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace linkhom
