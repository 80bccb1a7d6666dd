#pragma once

// Steady-state optical response of a cascade (ladder) three-level EIT system.
//
// Units: every rate, Rabi frequency and detuning is a frequency in MHz quoted
// as X/2pi (gamma_e = 6.066 means gamma_e/2pi = 6.066 MHz) and substituted
// into the closed form as is. No 2pi factors appear anywhere in this module.
//
// Sign convention: optical depth is OD = beta * Im(rho_ge) with beta > 0, so
// the transmittance eta = eta0 * exp(-OD) shows absorption as dips and the EIT
// window as a transparency peak. The magnitude of the exponent matches the
// usual Beer-Lambert form; its sign lives in the definition of beta.

#include <complex>
#include <cstddef>
#include <vector>

namespace rydberg {

struct AtomSystem {
  double omega_p = 2.0;     // probe Rabi frequency, MHz
  double omega_c = 15.0;    // coupling Rabi frequency, MHz
  double delta_p = 0.0;     // probe detuning, MHz
  double gamma_e = 6.066;   // intermediate-state relaxation, MHz
  double gamma_r = 0.004;   // Rydberg-state relaxation, MHz

  /// Throws ModelError(invalid_argument) on non-physical values.
  void validate() const;
  /// Weak-probe regime (omega_p < gamma_e). Violations are legal but the
  /// closed-form coherence loses accuracy; callers decide whether to warn.
  bool weak_probe() const noexcept { return omega_p < gamma_e; }
};

struct OpticalMedium {
  double beta = 0.0;  // dimensionless optical-response prefactor
  double eta0 = 1.0;  // incident intensity normalization

  void validate() const;
};

/// Prefactor that reproduces a 3.7 MHz transmittance FWHM for the default
/// AtomSystem (output of calibrate_beta, frozen).
inline constexpr double kDefaultBeta = 213.44908239;

inline OpticalMedium default_medium() { return OpticalMedium{kDefaultBeta, 1.0}; }

/// Uniform scan over the coupling detuning.
struct SpectrumGrid {
  std::vector<double> delta_c;  // MHz, strictly increasing
  std::vector<double> values;

  void validate() const;
  std::size_t size() const noexcept { return delta_c.size(); }
};

enum class Observable { absorption, transmittance };

/// Which steady state feeds Im(rho_ge).
enum class LineModel {
  weak_probe,      // closed-form first-order coherence
  density_matrix,  // full 3x3 Lindblad steady state (no weak-probe assumption)
};

/// Central-difference step for all spectral derivatives, MHz.
inline constexpr double kSlopeStep = 1e-4;

std::complex<double> steady_state_coherence(const AtomSystem& sys, double delta_c);

/// rho_ge from the stationary solution of the Lindblad master equation with
/// decay channels |e>->|g> (gamma_e) and |r>->|e> (gamma_r). Agrees with
/// steady_state_coherence as omega_p -> 0.
std::complex<double> density_matrix_coherence(const AtomSystem& sys, double delta_c);

/// Im(rho_ge): proportional to probe absorption.
double absorption(const AtomSystem& sys, double delta_c,
                  LineModel model = LineModel::weak_probe);

double transmittance(const AtomSystem& sys, const OpticalMedium& med, double delta_c,
                     LineModel model = LineModel::weak_probe);

double observe(const AtomSystem& sys, const OpticalMedium& med, double delta_c,
               Observable observable, LineModel model = LineModel::weak_probe);

SpectrumGrid scan_spectrum(const AtomSystem& sys, const OpticalMedium& med,
                           double delta_c_min, double delta_c_max, std::size_t n_points,
                           Observable observable,
                           LineModel model = LineModel::weak_probe);

/// d(observable)/d(delta_c) per MHz, central difference with kSlopeStep.
double spectral_slope(const AtomSystem& sys, const OpticalMedium& med, double delta_c,
                      Observable observable, LineModel model = LineModel::weak_probe);

/// Positive detuning of the steepest point of the observable inside
/// [lo, hi], grid search followed by golden-section refinement.
double max_slope_detuning(const AtomSystem& sys, const OpticalMedium& med,
                          Observable observable, LineModel model, double lo, double hi);

/// Full width at half maximum of the dominant peak above the baseline formed
/// by the mean of the two endpoint values. Crossings are linearly
/// interpolated. Throws not_a_peak when either side never drops below half.
double fwhm(const SpectrumGrid& grid);

/// Autler-Townes field conversion E = Delta_f / (sqrt(2) mu_s), with mu_s
/// given in MHz per (V/cm) so hbar is absorbed.
double ats_field_amplitude(double delta_f, double mu_s);

struct BetaCalibration {
  double scan_half_width = 40.0;  // MHz
  std::size_t points = 16001;
  double beta_lo = 1e-3;
  double beta_hi = 1e5;
  double rel_tolerance = 1e-10;
};

/// Bisects beta so that the transmittance FWHM equals target_fwhm.
double calibrate_beta(const AtomSystem& sys, double target_fwhm,
                      const BetaCalibration& opts = {});

}  // namespace rydberg
