#pragma once

#include <string>

#include "rydberg/eit.hpp"

namespace rydberg {

/// 1 V/m expressed in V/cm.
inline constexpr double kVPerMToVPerCm = 0.01;

struct StarkState {
  double alpha = 4.32;  // polarizability, MHz/(V/cm)^2
  std::string label = "Rb 35S1/2";

  void validate() const;
  /// Polarizability in MHz/(V/m)^2.
  double alpha_v_per_m() const noexcept { return alpha * kVPerMToVPerCm * kVPerMToVPerCm; }
};

/// Quadratic Stark shift 0.5 * alpha * E^2 in MHz, field in V/cm.
double stark_shift(const StarkState& state, double e_field);

/// Inverse of stark_shift; returns |E| in V/cm. Negative shifts are rejected.
double field_from_shift(const StarkState& state, double shift);

/// Absorption of the field-perturbed spectrum, modelled as a rigid
/// translation of the zero-field line by the Stark shift (field in V/cm).
double shifted_absorption(const AtomSystem& sys, const StarkState& state, double delta_c,
                          double e_field, LineModel model = LineModel::weak_probe);

/// Field whose Stark shift equals one linewidth (peak-tracking resolution).
double peak_shift_threshold(const StarkState& state, double fwhm);

}  // namespace rydberg
