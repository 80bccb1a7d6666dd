#include "rydberg/error.hpp"

namespace rydberg {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::degenerate_parameters: return "degenerate parameters";
    case ErrorCode::not_a_peak: return "not a peak";
    case ErrorCode::bracket_exhausted: return "bracket exhausted";
    case ErrorCode::unresolvable: return "unresolvable parameter";
    case ErrorCode::under_resolved: return "under-resolved scan";
  }
  return "unknown";
}

}  // namespace rydberg
