#include "rydberg/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rydberg/error.hpp"
#include "rydberg/optimize.hpp"

namespace rydberg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double probe_wavenumber() { return kTwoPi / kProbeWavelength; }

// Refines a sampled maximum on the two neighbouring cells.
Extremum refine_around(const std::function<double(double)>& f, double x, double step,
                       double lo, double hi, double sampled) {
  const Extremum fine =
      golden_section_maximize(f, std::max(lo, x - step), std::min(hi, x + step), 1e-10);
  return fine.value >= sampled ? fine : Extremum{x, sampled};
}

}  // namespace

void CavityConfig::validate() const {
  if (!(r >= 0.0 && r < 1.0))
    throw ModelError(ErrorCode::invalid_argument, "CavityConfig: r must lie in [0, 1)");
  if (!(cell_length > 0.0 && cell_length <= cav_length))
    throw ModelError(ErrorCode::invalid_argument, "CavityConfig: need 0 < cell_length <= cav_length");
  if (!std::isfinite(probe_cavity_detuning))
    throw ModelError(ErrorCode::invalid_argument, "CavityConfig: detuning must be finite");
}

double CavityConfig::free_spectral_range() const { return kSpeedOfLight / (2.0 * cav_length) * 1e-6; }

std::complex<double> cavity_susceptibility(const CavityConfig& cfg, const OpticalMedium& med,
                                           std::complex<double> rho_ge) {
  return med.beta * rho_ge / (probe_wavenumber() * cfg.cell_length);
}

double cavity_transmission(const CavityConfig& cfg, std::complex<double> chi) {
  cfg.validate();
  const double kl = probe_wavenumber() * cfg.cell_length;
  const double kappa = std::exp(-2.0 * kl * chi.imag());
  // 2L/c * Delta, with Delta in MHz converted to rad/s.
  const double round_trip = 2.0 * cfg.cav_length / kSpeedOfLight * kTwoPi * 1e6 * cfg.probe_cavity_detuning;
  const double phi = round_trip + kl * chi.real();
  const double t = 1.0 - cfg.r;
  const double denom = 1.0 + cfg.r * cfg.r * kappa * kappa - 2.0 * cfg.r * kappa * std::cos(phi);
  return t * t * std::sqrt(kappa) / denom;
}

double cavity_transmission(const CavityConfig& cfg, const AtomSystem& sys,
                           const OpticalMedium& med, double delta_c) {
  return cavity_transmission(cfg,
                             cavity_susceptibility(cfg, med, steady_state_coherence(sys, delta_c)));
}

CavityMetrics cavity_metrics(const std::function<double(double)>& transmission,
                             double half_width, std::size_t n_points,
                             const FieldInformation& info) {
  if (!(half_width > 0.0) || n_points < 3)
    throw ModelError(ErrorCode::invalid_argument, "cavity_metrics: bad scan");
  info.budget.validate();
  info.state.validate();

  SpectrumGrid grid;
  grid.delta_c.resize(n_points);
  grid.values.resize(n_points);
  const double step = 2.0 * half_width / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    grid.delta_c[i] = i + 1 == n_points ? half_width : -half_width + step * static_cast<double>(i);
    grid.values[i] = transmission(grid.delta_c[i]);
  }

  CavityMetrics m;
  m.fwhm = fwhm(grid);
  if (step > m.fwhm / 20.0)
    throw ModelError(ErrorCode::under_resolved, "cavity_metrics: scan step exceeds FWHM/20");

  auto slope = [&](double x) {
    return (transmission(x + kSlopeStep) - transmission(x - kSlopeStep)) / (2.0 * kSlopeStep);
  };
  const double gain = info.state.alpha_v_per_m() * info.e_bias;
  auto fi = [&](double x) {
    const double s = transmission(x);
    if (!(s > 0.0)) return 0.0;
    const double d = slope(x) * gain;
    return 4.0 * info.budget.n0 * d * d / s;
  };
  auto steepness = [&](double x) { return std::abs(slope(x)); };

  std::size_t best_slope = 0;
  std::size_t best_fi = 0;
  std::vector<double> steep(n_points);
  std::vector<double> info_values(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    steep[i] = steepness(grid.delta_c[i]);
    info_values[i] = fi(grid.delta_c[i]);
    if (steep[i] > steep[best_slope]) best_slope = i;
    if (info_values[i] > info_values[best_fi]) best_fi = i;
  }
  const Extremum s = refine_around(steepness, grid.delta_c[best_slope], step, -half_width,
                                   half_width, steep[best_slope]);
  const Extremum f = refine_around(fi, grid.delta_c[best_fi], step, -half_width, half_width,
                                   info_values[best_fi]);
  m.max_slope = s.value;
  m.max_slope_at = s.x;
  m.peak_fi = f.value;
  m.peak_fi_at = f.x;
  return m;
}

CavityMetrics cavity_metrics(const CavityConfig& cfg, const AtomSystem& sys,
                             const OpticalMedium& med, double half_width, std::size_t n_points,
                             const FieldInformation& info) {
  cfg.validate();
  sys.validate();
  med.validate();
  return cavity_metrics([&](double x) { return cavity_transmission(cfg, sys, med, x); },
                        half_width, n_points, info);
}

EnhancementReport enhancement_report(const CavityConfig& cfg, const AtomSystem& sys,
                                     const OpticalMedium& med, const FieldInformation& info) {
  cfg.validate();
  sys.validate();
  med.validate();
  auto free_line = [&](double x) { return transmittance(sys, med, x); };
  auto cavity_line = [&](double x) { return cavity_transmission(cfg, sys, med, x); };

  EnhancementReport out;
  out.free_space = cavity_metrics(free_line, kFreeSpaceHalfWidth, kFreeSpacePoints, info);

  // A coarse pass sizes the fine window: at least +/-2 MHz and six
  // linewidths, with at least 200 points per linewidth.
  const SpectrumGrid coarse = [&] {
    SpectrumGrid g;
    g.delta_c.resize(kFreeSpacePoints);
    g.values.resize(kFreeSpacePoints);
    const double step = 2.0 * kFreeSpaceHalfWidth / static_cast<double>(kFreeSpacePoints - 1);
    for (std::size_t i = 0; i < kFreeSpacePoints; ++i) {
      g.delta_c[i] = -kFreeSpaceHalfWidth + step * static_cast<double>(i);
      g.values[i] = cavity_line(g.delta_c[i]);
    }
    return g;
  }();
  const double width_estimate = fwhm(coarse);
  const double half_width = std::min(kFreeSpaceHalfWidth, std::max(kCavityHalfWidth, 6.0 * width_estimate));
  const double step = std::min(kCavityStep, width_estimate / 200.0);
  const auto points = static_cast<std::size_t>(std::ceil(2.0 * half_width / step)) + 1;

  out.cavity = cavity_metrics(cavity_line, half_width, points, info);
  out.cavity_half_width = half_width;
  out.cavity_points = points;
  out.inverse_linewidth = out.free_space.fwhm / out.cavity.fwhm;
  out.slope = out.cavity.max_slope / out.free_space.max_slope;
  out.fisher = out.cavity.peak_fi / out.free_space.peak_fi;
  out.sensitivity = std::sqrt(out.fisher);
  return out;
}

}  // namespace rydberg
