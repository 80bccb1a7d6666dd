#pragma once

// DC-biased two-point differential readout.
//
// Forward models (two_point_signal, sense_timeseries) always use the exact
// rigidly shifted line shape; the linearized relations only appear in the
// retrieval formulas. Retrieval works on the absorption signal rho = Im(rho_ge),
// while the Fisher information uses the transmittance through beta.
//
// Fields at this interface are in V/m. The polarizability is converted once
// to MHz/(V/m)^2 when the configuration is built.

#include <cstdint>
#include <optional>
#include <vector>

#include "rydberg/eit.hpp"
#include "rydberg/estimation.hpp"
#include "rydberg/sigproc.hpp"
#include "rydberg/stark.hpp"

namespace rydberg {

class SensorConfig {
 public:
  SensorConfig(AtomSystem sys, OpticalMedium med, StarkState state, PhotonBudget budget,
               double delta, double e_bias);

  const AtomSystem& sys() const noexcept { return sys_; }
  const OpticalMedium& med() const noexcept { return med_; }
  const StarkState& state() const noexcept { return state_; }
  const PhotonBudget& budget() const noexcept { return budget_; }
  double delta() const noexcept { return delta_; }
  double e_bias() const noexcept { return e_bias_; }
  /// MHz/(V/m)^2.
  double alpha() const noexcept { return alpha_; }

  /// Same configuration at a different operating detuning or bias.
  SensorConfig with_delta(double delta) const;
  SensorConfig with_bias(double e_bias) const;
  SensorConfig with_budget(PhotonBudget budget) const;

  /// Stark shift in MHz for a field in V/m.
  double shift(double e_field) const noexcept { return 0.5 * alpha_ * e_field * e_field; }
  /// Zero-field absorption line rho0(delta_c).
  double line(double delta_c) const { return absorption(sys_, delta_c); }
  /// rho0'(delta) per MHz, central difference.
  double line_slope() const;

 private:
  AtomSystem sys_;
  OpticalMedium med_;
  StarkState state_;
  PhotonBudget budget_;
  double delta_;
  double e_bias_;
  double alpha_;
};

struct NoiseSpec {
  double m_i = 0.0;      // common-mode modulation depth
  double f_i = 0.0;      // Hz
  double phi_i = 0.0;    // rad
  double sigma_i = 0.0;  // common-mode white Gaussian std
  double additive_rms_frac = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Harmonic {
  int order = 2;
  double amplitude = 0.0;  // V/m
  double phase = 0.0;      // rad
};

struct Drift {
  double amplitude = 0.0;  // V/m
  double freq = 0.0;       // Hz
  double phase = 0.0;      // rad
};

struct FieldSpec {
  double a = 0.0;      // fundamental amplitude, V/m
  double f_ac = 50.0;  // Hz
  double phi = 0.0;    // rad
  std::vector<Harmonic> harmonics;
  Drift drift;

  void validate() const;
};

/// rho(+delta, E) - rho(-delta, E), exact shifted line, E in V/m.
double two_point_signal(const SensorConfig& cfg, double e_field);

/// Unbiased retrieval E = sqrt(|rho_AB| / (alpha |rho0'(delta)|)), V/m.
double dc_retrieve_unbiased(const SensorConfig& cfg, double measured_rho_ab);

struct BiasedRetrieval {
  double rho_ab_delta = 0.0;  // rho_AB(E0 + E) - rho_AB(-E0 + E)
  double e_hat = 0.0;         // V/m
};

/// Simulates both bias polarities and applies the linearized retrieval.
BiasedRetrieval dc_retrieve_biased(const SensorConfig& cfg, double e_field_true);

/// Fisher information for the DC field, (V/m)^-2: four independent windows
/// (two detunings, two polarities) with dDeltaS/dE = alpha * E0.
double fi_dc_biased(const SensorConfig& cfg);

/// 1 / sqrt(fi_dc_biased), V/m per sqrt(Hz). Throws unresolvable when the FI
/// vanishes (e.g. delta = 0 or no bias).
double min_detectable_field(const SensorConfig& cfg);

/// E0 + fundamental + harmonics + drift, sampled uniformly from t = 0.
TimeSeries synthesize_field(const FieldSpec& spec, double duration, double sample_rate,
                            double e_bias);

struct SensedSeries {
  TimeSeries rho_a;
  TimeSeries rho_b;
  TimeSeries rho_ab;
};

/// Quasi-static readout of a field time series at +/-delta. With noise, a
/// common-mode multiplicative term and independent additive Gaussian noise
/// per channel are applied; the additive RMS is a fraction of the noiseless
/// rho_AB half peak-to-peak amplitude.
SensedSeries sense_timeseries(const SensorConfig& cfg, const TimeSeries& field,
                              const std::optional<NoiseSpec>& noise);

struct Demodulation {
  double amplitude_hat = 0.0;  // V/m
  double phase = 0.0;          // rad, spectral phase at f_ac
  Spectrum spectrum;
};

/// Amplitude of the f_ac component of a biased differential series:
/// A = |X(f_ac)| / (2 alpha |rho0'| E0) under single-sided normalization.
Demodulation demodulate(const TimeSeries& rho_ab, double f_ac, const SensorConfig& cfg);

/// Blind frequency estimate: strongest refined peak inside [f_min, f_max].
double estimate_frequency(const Spectrum& spec, double f_min, double f_max);

/// Closed-form AC amplitude FI, (V/m)^-2, with n_total = n0 * duration.
double fi_ac(const SensorConfig& cfg, double f_ac, double duration);

/// Time integral of the instantaneous AC FI density by composite Simpson's
/// rule (steps subintervals); cross-check for fi_ac.
double fi_ac_numeric(const SensorConfig& cfg, double f_ac, double phi, double duration,
                     std::size_t steps = 20000);

}  // namespace rydberg
