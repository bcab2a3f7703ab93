#pragma once

#include <stdexcept>
#include <string>

namespace epcontact {

/// Machine-readable failure categories.  Every exception thrown by the
/// library carries one of these so callers (CLI, bindings) can map it to an
/// exit code without parsing message text.
enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  InvalidKernel,
  InvalidWeight,
  DegenerateEmbedding,
  SingularSystem,
  SchemaError,
  UnknownSuite,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

}  // namespace epcontact
