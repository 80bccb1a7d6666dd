#pragma once

#include <stdexcept>
#include <string>

namespace rydberg {

enum class ErrorCode {
  invalid_argument,
  degenerate_parameters,
  not_a_peak,
  bracket_exhausted,
  unresolvable,
  under_resolved,
};

const char* to_string(ErrorCode code) noexcept;

/// Raised by every model routine when inputs violate a precondition or the
/// computation cannot produce a meaningful value.
class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rydberg
