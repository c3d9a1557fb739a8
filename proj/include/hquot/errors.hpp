#pragma once

#include <stdexcept>
#include <string>

namespace hquot {

// Failure categories surfaced by the library. The CLI maps checkpoint
// failures to exit code 3 and everything else to exit code 2.
enum class Errc {
  NotInvertible,
  RangeTooLarge,
  VacuousSum,
  InvalidPrime,
  BaseNotCoprime,
  MethodUnavailable,
  Overflow,
  CeilingExceeded,
  CheckpointMismatch,
  CheckpointCorrupt,
  IoFailure,
  NotPrime,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& detail) {
  throw Error(code, std::string(errc_name(code)) + ": " + detail);
}

}  // namespace hquot
