#pragma once

// Fabry-Perot cavity around the vapor cell: Airy transmission with the EIT
// susceptibility inside.
//
// chi is scaled so that k_p * l * Im(chi) = beta * Im(rho_ge) and the same
// factor applies to Re(chi); at R = 0 the cavity reduces to the single-pass
// transmittance exactly.

#include <complex>
#include <functional>

#include "rydberg/eit.hpp"
#include "rydberg/estimation.hpp"
#include "rydberg/stark.hpp"

namespace rydberg {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kProbeWavelength = 780e-9;    // m, Rb D2

struct CavityConfig {
  double r = 0.9;                      // mirror intensity reflectivity
  double cav_length = 0.5;             // m
  double cell_length = 0.05;           // m
  double probe_cavity_detuning = 0.0;  // MHz, probe minus cavity resonance

  void validate() const;
  /// c / (2L) in MHz.
  double free_spectral_range() const;
};

/// Susceptibility for a medium of length cfg.cell_length.
std::complex<double> cavity_susceptibility(const CavityConfig& cfg, const OpticalMedium& med,
                                           std::complex<double> rho_ge);

/// Airy transmission for a given susceptibility.
double cavity_transmission(const CavityConfig& cfg, std::complex<double> chi);

/// Cavity transmission as a function of the coupling detuning.
double cavity_transmission(const CavityConfig& cfg, const AtomSystem& sys,
                           const OpticalMedium& med, double delta_c);

/// Everything needed to turn a transmission spectrum into field information.
struct FieldInformation {
  PhotonBudget budget;
  StarkState state;
  double e_bias = 1.0;  // V/m
};

struct CavityMetrics {
  double fwhm = 0.0;          // MHz
  double max_slope = 0.0;     // |dS/d delta_c|, per MHz
  double max_slope_at = 0.0;  // MHz
  double peak_fi = 0.0;       // (V/m)^-2
  double peak_fi_at = 0.0;    // MHz
};

/// Linewidth, steepest slope and peak biased-DC field FI of a transmission
/// line sampled on n_points over [-half_width, half_width]. The FI is
/// 4 n0 S (d ln S / dDeltaS * alpha * E0)^2. Grid maxima are refined by
/// golden-section search. Throws under_resolved when the step exceeds
/// FWHM / 20.
CavityMetrics cavity_metrics(const std::function<double(double)>& transmission,
                             double half_width, std::size_t n_points,
                             const FieldInformation& info);

CavityMetrics cavity_metrics(const CavityConfig& cfg, const AtomSystem& sys,
                             const OpticalMedium& med, double half_width, std::size_t n_points,
                             const FieldInformation& info);

struct EnhancementReport {
  CavityMetrics free_space;
  CavityMetrics cavity;
  double inverse_linewidth = 0.0;  // free FWHM / cavity FWHM
  double slope = 0.0;              // cavity slope / free slope
  double fisher = 0.0;             // cavity FI / free FI
  double sensitivity = 0.0;        // free dE_min / cavity dE_min
  double cavity_half_width = 0.0;  // MHz, fine cavity scan actually used
  std::size_t cavity_points = 0;
};

inline constexpr double kFreeSpaceHalfWidth = 40.0;  // MHz
inline constexpr std::size_t kFreeSpacePoints = 16001;
inline constexpr double kCavityHalfWidth = 2.0;  // MHz
inline constexpr double kCavityStep = 2e-4;      // MHz

/// Free-space metrics on +/-40 MHz; cavity metrics on +/-2 MHz at 2e-4 MHz,
/// widened (and refined) when a coarse pass finds a broader or narrower line.
EnhancementReport enhancement_report(const CavityConfig& cfg, const AtomSystem& sys,
                                     const OpticalMedium& med, const FieldInformation& info);

}  // namespace rydberg
