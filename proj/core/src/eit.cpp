#include "rydberg/eit.hpp"

#include <cmath>
#include <string>

#include "rydberg/error.hpp"
#include "rydberg/optimize.hpp"

namespace rydberg {
namespace {

constexpr double kDegenerateDenominator = 1e-30;

void require(bool ok, const std::string& what) {
  if (!ok) throw ModelError(ErrorCode::invalid_argument, what);
}

}  // namespace

void AtomSystem::validate() const {
  require(std::isfinite(omega_p) && omega_p > 0.0, "AtomSystem: omega_p must be > 0");
  require(std::isfinite(omega_c) && omega_c >= 0.0, "AtomSystem: omega_c must be >= 0");
  require(std::isfinite(delta_p), "AtomSystem: delta_p must be finite");
  require(std::isfinite(gamma_e) && gamma_e > 0.0, "AtomSystem: gamma_e must be > 0");
  require(std::isfinite(gamma_r) && gamma_r > 0.0, "AtomSystem: gamma_r must be > 0");
}

void OpticalMedium::validate() const {
  require(std::isfinite(beta) && beta > 0.0, "OpticalMedium: beta must be > 0");
  require(std::isfinite(eta0) && eta0 > 0.0, "OpticalMedium: eta0 must be > 0");
}

void SpectrumGrid::validate() const {
  require(delta_c.size() >= 2, "SpectrumGrid: need at least two points");
  require(delta_c.size() == values.size(), "SpectrumGrid: axis/value length mismatch");
  for (std::size_t i = 1; i < delta_c.size(); ++i)
    require(delta_c[i] > delta_c[i - 1], "SpectrumGrid: axis must be strictly increasing");
}

std::complex<double> steady_state_coherence(const AtomSystem& sys, double delta_c) {
  sys.validate();
  using C = std::complex<double>;
  const C rydberg_term(sys.gamma_r, 2.0 * (sys.delta_p + delta_c));
  const C intermediate_term(sys.gamma_e, 2.0 * sys.delta_p);
  const C denominator = intermediate_term * rydberg_term + sys.omega_c * sys.omega_c;
  if (std::abs(denominator) < kDegenerateDenominator)
    throw ModelError(ErrorCode::degenerate_parameters, "steady_state_coherence: degenerate denominator");
  return C(0.0, sys.omega_p) * rydberg_term / denominator;
}

double absorption(const AtomSystem& sys, double delta_c, LineModel model) {
  return model == LineModel::weak_probe ? steady_state_coherence(sys, delta_c).imag()
                                        : density_matrix_coherence(sys, delta_c).imag();
}

double transmittance(const AtomSystem& sys, const OpticalMedium& med, double delta_c,
                     LineModel model) {
  med.validate();
  return med.eta0 * std::exp(-med.beta * absorption(sys, delta_c, model));
}

double observe(const AtomSystem& sys, const OpticalMedium& med, double delta_c,
               Observable observable, LineModel model) {
  return observable == Observable::absorption ? absorption(sys, delta_c, model)
                                              : transmittance(sys, med, delta_c, model);
}

SpectrumGrid scan_spectrum(const AtomSystem& sys, const OpticalMedium& med, double delta_c_min,
                           double delta_c_max, std::size_t n_points, Observable observable,
                           LineModel model) {
  require(n_points >= 2, "scan_spectrum: need at least two points");
  require(std::isfinite(delta_c_min) && std::isfinite(delta_c_max) && delta_c_max > delta_c_min,
          "scan_spectrum: degenerate detuning range");
  SpectrumGrid grid;
  grid.delta_c.resize(n_points);
  grid.values.resize(n_points);
  const double step = (delta_c_max - delta_c_min) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    // Last point pinned to the range end so symmetric scans stay symmetric.
    const double x = i + 1 == n_points ? delta_c_max : delta_c_min + step * static_cast<double>(i);
    grid.delta_c[i] = x;
    grid.values[i] = observe(sys, med, x, observable, model);
  }
  return grid;
}

double spectral_slope(const AtomSystem& sys, const OpticalMedium& med, double delta_c,
                      Observable observable, LineModel model) {
  const double up = observe(sys, med, delta_c + kSlopeStep, observable, model);
  const double down = observe(sys, med, delta_c - kSlopeStep, observable, model);
  return (up - down) / (2.0 * kSlopeStep);
}

double max_slope_detuning(const AtomSystem& sys, const OpticalMedium& med, Observable observable,
                          LineModel model, double lo, double hi) {
  require(lo >= 0.0 && hi > lo, "max_slope_detuning: need 0 <= lo < hi");
  auto steepness = [&](double x) { return std::abs(spectral_slope(sys, med, x, observable, model)); };
  const std::size_t coarse = model == LineModel::weak_probe ? 2001 : 401;
  return refine_maximum(steepness, lo, hi, coarse, 1e-7).x;
}

double fwhm(const SpectrumGrid& grid) {
  grid.validate();
  const auto& x = grid.delta_c;
  const auto& v = grid.values;
  const std::size_t n = v.size();

  std::size_t peak = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] > v[peak]) peak = i;
  const double baseline = 0.5 * (v.front() + v.back());
  if (!(v[peak] > baseline))
    throw ModelError(ErrorCode::not_a_peak, "fwhm: no peak above the baseline");
  const double half = baseline + 0.5 * (v[peak] - baseline);

  auto crossing = [&](std::size_t inside, std::size_t outside) {
    return x[inside] + (half - v[inside]) * (x[outside] - x[inside]) / (v[outside] - v[inside]);
  };

  std::size_t r = peak;
  while (r + 1 < n && v[r + 1] >= half) ++r;
  if (r + 1 >= n) throw ModelError(ErrorCode::not_a_peak, "fwhm: no half-maximum crossing on the right");
  std::size_t l = peak;
  while (l > 0 && v[l - 1] >= half) --l;
  if (l == 0) throw ModelError(ErrorCode::not_a_peak, "fwhm: no half-maximum crossing on the left");

  return crossing(r, r + 1) - crossing(l, l - 1);
}

double ats_field_amplitude(double delta_f, double mu_s) {
  require(mu_s > 0.0, "ats_field_amplitude: mu_s must be > 0");
  require(delta_f >= 0.0, "ats_field_amplitude: delta_f must be >= 0");
  return delta_f / (std::sqrt(2.0) * mu_s);
}

double calibrate_beta(const AtomSystem& sys, double target_fwhm, const BetaCalibration& opts) {
  require(target_fwhm > 0.0, "calibrate_beta: target must be > 0");
  auto width_at = [&](double beta) {
    const SpectrumGrid grid = scan_spectrum(sys, OpticalMedium{beta, 1.0}, -opts.scan_half_width,
                                            opts.scan_half_width, opts.points,
                                            Observable::transmittance);
    return fwhm(grid);
  };
  // The transmittance window narrows monotonically as beta grows.
  double lo = opts.beta_lo;
  double hi = opts.beta_hi;
  if (width_at(lo) < target_fwhm)
    throw ModelError(ErrorCode::bracket_exhausted,
                     "calibrate_beta: target wider than the small-beta limit");
  if (width_at(hi) > target_fwhm)
    throw ModelError(ErrorCode::bracket_exhausted,
                     "calibrate_beta: target narrower than the large-beta limit");
  for (int iter = 0; iter < 200 && hi - lo > opts.rel_tolerance * lo; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (width_at(mid) > target_fwhm)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace rydberg
