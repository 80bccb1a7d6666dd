#include "rydberg/stark.hpp"

#include <cmath>

#include "rydberg/error.hpp"

namespace rydberg {

void StarkState::validate() const {
  if (!(std::isfinite(alpha) && alpha > 0.0))
    throw ModelError(ErrorCode::invalid_argument, "StarkState: alpha must be > 0");
}

double stark_shift(const StarkState& state, double e_field) {
  state.validate();
  return 0.5 * state.alpha * e_field * e_field;
}

double field_from_shift(const StarkState& state, double shift) {
  state.validate();
  if (!(shift >= 0.0))
    throw ModelError(ErrorCode::invalid_argument, "field_from_shift: shift must be >= 0");
  return std::sqrt(2.0 * shift / state.alpha);
}

double shifted_absorption(const AtomSystem& sys, const StarkState& state, double delta_c,
                          double e_field, LineModel model) {
  return absorption(sys, delta_c - stark_shift(state, e_field), model);
}

double peak_shift_threshold(const StarkState& state, double fwhm) {
  state.validate();
  if (!(fwhm >= 0.0))
    throw ModelError(ErrorCode::invalid_argument, "peak_shift_threshold: fwhm must be >= 0");
  return std::sqrt(2.0 * fwhm / state.alpha);
}

}  // namespace rydberg
