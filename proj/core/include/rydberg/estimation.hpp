#pragma once

// Fisher information and Cramer-Rao machinery for Poisson photon counting of
// the transmitted probe.
//
// The estimated parameter is the Stark shift itself (theta = DeltaS, MHz).
// Under the rigid-translation model d/dDeltaS = -d/d(delta_c), so information
// is read off the zero-field spectrum. The photon budget n0 counts photons in
// a 1 s window, so sqrt(CRLB) carries MHz/sqrt(Hz).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rydberg/eit.hpp"

namespace rydberg {

struct PhotonBudget {
  double n0 = 4.7e14;

  void validate() const;
};

/// FI over the (omega_c, delta_c) plane, row-major with one row per omega_c.
struct FisherMap {
  std::vector<double> delta_c_axis;
  std::vector<double> omega_c_axis;
  std::vector<double> fi;

  double at(std::size_t omega_row, std::size_t delta_col) const {
    return fi[omega_row * delta_c_axis.size() + delta_col];
  }
};

struct OperatingPoint {
  double delta = 0.0;        // MHz, positive branch
  double fi_at_delta = 0.0;  // MHz^-2
};

/// Derivative step for every FI evaluation, MHz.
inline constexpr double kFisherStep = 1e-4;

/// Poisson FI (1/n)(dn/dtheta)^2 with a central-difference derivative.
double poisson_fisher(const std::function<double(double)>& mean_fn, double theta,
                      double step = kFisherStep);

/// FI for theta = DeltaS at one detuning: n0 * eta * (d ln eta / dDeltaS)^2.
double fi_stark_shift(const AtomSystem& sys, const OpticalMedium& med,
                      const PhotonBudget& budget, double delta_c);

/// 1 / fi. Throws unresolvable for fi <= 0.
double crlb(double fi);

FisherMap fisher_map(const AtomSystem& sys_template, const OpticalMedium& med,
                     const PhotonBudget& budget, const std::vector<double>& delta_c_axis,
                     const std::vector<double>& omega_c_axis);

/// FI-optimal detuning on the positive branch of [lo, hi]: 2001-point grid,
/// then golden-section refinement.
OperatingPoint optimal_operating_point(const AtomSystem& sys, const OpticalMedium& med,
                                       const PhotonBudget& budget, double lo, double hi);

/// |rho_AB - rho_AB_lin| / |rho_AB_lin| for the two-point response of an
/// arbitrary zero-field line shape.
double relative_nonlinearity(const std::function<double(double)>& line_shape, double shift,
                             double delta);

struct UsableRange {
  double range = 0.0;       // MHz
  bool degenerate = false;  // tolerance already exceeded at the first step
};

inline constexpr double kRangeScanStep = 1e-3;

/// Largest shift such that the relative nonlinearity stays within tolerance
/// for every scanned shift up to it (first crossing). Scans from 1e-3 MHz in
/// 1e-3 MHz steps up to max_shift.
UsableRange usable_range(const std::function<double(double)>& line_shape, double delta,
                         double tolerance, double max_shift = 100.0);

UsableRange usable_range(const AtomSystem& sys, double delta, double tolerance,
                         double max_shift = 100.0);

struct TradeoffRow {
  double omega_c = 0.0;
  double delta_opt = 0.0;
  double f_max = 0.0;
  double usable_range = 0.0;
};

struct TradeoffOptions {
  double search_lo = 1e-3;
  double search_hi = 20.0;
  double tolerance = 0.05;
};

std::vector<TradeoffRow> tradeoff_sweep(const AtomSystem& sys_template, const OpticalMedium& med,
                                        const PhotonBudget& budget,
                                        const std::vector<double>& omega_c_axis,
                                        const TradeoffOptions& opts = {});

struct McValidation {
  double sample_variance = 0.0;
  double crlb = 0.0;
  double mean_estimate = 0.0;
  std::size_t trials = 0;
};

/// Draws Poisson counts at +/-delta for a true shift, forms the
/// maximum-likelihood shift estimate per trial and compares its spread with
/// the two-point CRLB.
McValidation mc_estimator_validation(const AtomSystem& sys, const OpticalMedium& med,
                                     const PhotonBudget& budget, double delta, double true_shift,
                                     std::size_t n_trials, std::uint64_t seed);

}  // namespace rydberg
