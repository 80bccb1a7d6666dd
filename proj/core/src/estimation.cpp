#include "rydberg/estimation.hpp"

#include <cmath>
#include <random>
#include <string>

#include "rydberg/error.hpp"
#include "rydberg/optimize.hpp"

namespace rydberg {

void PhotonBudget::validate() const {
  if (!(std::isfinite(n0) && n0 > 0.0))
    throw ModelError(ErrorCode::invalid_argument, "PhotonBudget: n0 must be > 0");
}

double poisson_fisher(const std::function<double(double)>& mean_fn, double theta, double step) {
  if (!(step > 0.0)) throw ModelError(ErrorCode::invalid_argument, "poisson_fisher: step must be > 0");
  const double mean = mean_fn(theta);
  if (!(mean > 0.0))
    throw ModelError(ErrorCode::invalid_argument, "poisson_fisher: mean must be positive");
  const double derivative = (mean_fn(theta + step) - mean_fn(theta - step)) / (2.0 * step);
  return derivative * derivative / mean;
}

double fi_stark_shift(const AtomSystem& sys, const OpticalMedium& med, const PhotonBudget& budget,
                      double delta_c) {
  budget.validate();
  const double eta = transmittance(sys, med, delta_c);
  // ln(eta) = ln(eta0) - beta * rho, and d/dDeltaS = -d/d(delta_c).
  const double log_slope = med.beta * spectral_slope(sys, med, delta_c, Observable::absorption);
  return budget.n0 * eta * log_slope * log_slope;
}

double crlb(double fi) {
  if (!(fi > 0.0)) throw ModelError(ErrorCode::unresolvable, "crlb: Fisher information must be > 0");
  return 1.0 / fi;
}

FisherMap fisher_map(const AtomSystem& sys_template, const OpticalMedium& med,
                     const PhotonBudget& budget, const std::vector<double>& delta_c_axis,
                     const std::vector<double>& omega_c_axis) {
  auto check_axis = [](const std::vector<double>& axis, const char* name) {
    if (axis.empty())
      throw ModelError(ErrorCode::invalid_argument, std::string("fisher_map: empty ") + name + " axis");
    for (std::size_t i = 1; i < axis.size(); ++i)
      if (!(axis[i] > axis[i - 1]))
        throw ModelError(ErrorCode::invalid_argument,
                         std::string("fisher_map: ") + name + " axis must be strictly increasing");
  };
  check_axis(delta_c_axis, "delta_c");
  check_axis(omega_c_axis, "omega_c");

  FisherMap map{delta_c_axis, omega_c_axis, {}};
  map.fi.resize(delta_c_axis.size() * omega_c_axis.size());
  // Rows are independent.
  for (std::size_t row = 0; row < omega_c_axis.size(); ++row) {
    AtomSystem sys = sys_template;
    sys.omega_c = omega_c_axis[row];
    for (std::size_t col = 0; col < delta_c_axis.size(); ++col)
      map.fi[row * delta_c_axis.size() + col] = fi_stark_shift(sys, med, budget, delta_c_axis[col]);
  }
  return map;
}

OperatingPoint optimal_operating_point(const AtomSystem& sys, const OpticalMedium& med,
                                       const PhotonBudget& budget, double lo, double hi) {
  if (!(lo > 0.0 && hi > lo))
    throw ModelError(ErrorCode::invalid_argument, "optimal_operating_point: need 0 < lo < hi");
  auto fi = [&](double x) { return fi_stark_shift(sys, med, budget, x); };
  const Extremum best = refine_maximum(fi, lo, hi, 2001, 1e-9);
  if (!(best.value > 0.0))
    throw ModelError(ErrorCode::unresolvable, "optimal_operating_point: FI vanishes on the range");
  return {best.x, best.value};
}

double relative_nonlinearity(const std::function<double(double)>& line_shape, double shift,
                             double delta) {
  const double slope =
      (line_shape(delta + kFisherStep) - line_shape(delta - kFisherStep)) / (2.0 * kFisherStep);
  const double exact = line_shape(delta - shift) - line_shape(-delta - shift);
  const double linear = -2.0 * shift * slope;
  return std::abs(exact - linear) / std::abs(linear);
}

UsableRange usable_range(const std::function<double(double)>& line_shape, double delta,
                         double tolerance, double max_shift) {
  if (!(delta > 0.0)) throw ModelError(ErrorCode::invalid_argument, "usable_range: delta must be > 0");
  if (!(tolerance > 0.0 && tolerance < 1.0))
    throw ModelError(ErrorCode::invalid_argument, "usable_range: tolerance must lie in (0, 1)");
  UsableRange result;
  const auto steps = static_cast<std::size_t>(std::floor(max_shift / kRangeScanStep + 1e-9));
  for (std::size_t i = 1; i <= steps; ++i) {
    const double shift = kRangeScanStep * static_cast<double>(i);
    const double eps = relative_nonlinearity(line_shape, shift, delta);
    if (!(eps <= tolerance)) {
      result.degenerate = i == 1;
      return result;
    }
    result.range = shift;
  }
  return result;
}

UsableRange usable_range(const AtomSystem& sys, double delta, double tolerance, double max_shift) {
  sys.validate();
  return usable_range([&](double x) { return absorption(sys, x); }, delta, tolerance, max_shift);
}

std::vector<TradeoffRow> tradeoff_sweep(const AtomSystem& sys_template, const OpticalMedium& med,
                                        const PhotonBudget& budget,
                                        const std::vector<double>& omega_c_axis,
                                        const TradeoffOptions& opts) {
  if (omega_c_axis.empty())
    throw ModelError(ErrorCode::invalid_argument, "tradeoff_sweep: empty omega_c axis");
  std::vector<TradeoffRow> rows;
  rows.reserve(omega_c_axis.size());
  for (const double omega_c : omega_c_axis) {
    AtomSystem sys = sys_template;
    sys.omega_c = omega_c;
    const OperatingPoint op = optimal_operating_point(sys, med, budget, opts.search_lo, opts.search_hi);
    const UsableRange range = usable_range(sys, op.delta, opts.tolerance);
    rows.push_back({omega_c, op.delta, op.fi_at_delta, range.range});
  }
  return rows;
}

McValidation mc_estimator_validation(const AtomSystem& sys, const OpticalMedium& med,
                                     const PhotonBudget& budget, double delta, double true_shift,
                                     std::size_t n_trials, std::uint64_t seed) {
  if (n_trials < 1000)
    throw ModelError(ErrorCode::invalid_argument, "mc_estimator_validation: need >= 1000 trials");
  if (!(delta > 0.0))
    throw ModelError(ErrorCode::invalid_argument, "mc_estimator_validation: delta must be > 0");
  budget.validate();

  auto mean_counts = [&](double detuning, double shift) {
    return budget.n0 * transmittance(sys, med, detuning - shift);
  };
  const double mean_a = mean_counts(delta, true_shift);
  const double mean_b = mean_counts(-delta, true_shift);
  const double fi = fi_stark_shift(sys, med, budget, delta - true_shift) +
                    fi_stark_shift(sys, med, budget, -delta - true_shift);

  std::mt19937_64 rng(seed);
  std::poisson_distribution<long long> draw_a(mean_a);
  std::poisson_distribution<long long> draw_b(mean_b);

  // The two-point likelihood is searched over shifts in (-delta, delta), where
  // the operating points stay on opposite flanks of the line.
  const double window = delta;
  constexpr std::size_t kCoarse = 201;
  const double coarse_step = 2.0 * window / static_cast<double>(kCoarse - 1);

  // Welford running moments.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    const auto counts_a = static_cast<double>(draw_a(rng));
    const auto counts_b = static_cast<double>(draw_b(rng));
    auto log_likelihood = [&](double shift) {
      const double mu_a = mean_counts(delta, shift);
      const double mu_b = mean_counts(-delta, shift);
      return counts_a * std::log(mu_a) - mu_a + counts_b * std::log(mu_b) - mu_b;
    };
    const Extremum coarse = grid_maximize(log_likelihood, -window, window, kCoarse);
    if (coarse.x <= -window + 0.5 * coarse_step || coarse.x >= window - 0.5 * coarse_step)
      throw ModelError(ErrorCode::bracket_exhausted,
                       "mc_estimator_validation: likelihood maximum not bracketed");
    const double estimate =
        golden_section_maximize(log_likelihood, coarse.x - coarse_step, coarse.x + coarse_step, 1e-11).x;
    const double delta_mean = estimate - mean;
    mean += delta_mean / static_cast<double>(trial + 1);
    m2 += delta_mean * (estimate - mean);
  }
  McValidation out;
  out.sample_variance = m2 / static_cast<double>(n_trials - 1);
  out.crlb = crlb(fi);
  out.mean_estimate = mean;
  out.trials = n_trials;
  return out;
}

}  // namespace rydberg
