#include "rydberg/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "rydberg/error.hpp"

namespace rydberg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw ModelError(code, what);
}

double checked_slope(const SensorConfig& cfg) {
  const double slope = cfg.line_slope();
  require(slope != 0.0, ErrorCode::invalid_argument,
          "readout: line slope vanishes at the operating detuning");
  return slope;
}

// (beta * alpha * E0 * d rho / dDeltaS)^2 * eta(delta): the per-photon factor
// shared by the DC and AC information expressions.
double information_density(const SensorConfig& cfg) {
  const double eta = transmittance(cfg.sys(), cfg.med(), cfg.delta());
  const double gain = cfg.med().beta * cfg.alpha() * cfg.e_bias() * cfg.line_slope();
  return eta * gain * gain;
}

}  // namespace

SensorConfig::SensorConfig(AtomSystem sys, OpticalMedium med, StarkState state,
                           PhotonBudget budget, double delta, double e_bias)
    : sys_(sys), med_(med), state_(std::move(state)), budget_(budget), delta_(delta), e_bias_(e_bias) {
  sys_.validate();
  med_.validate();
  state_.validate();
  budget_.validate();
  require(std::isfinite(delta_) && delta_ > 0.0, ErrorCode::invalid_argument,
          "SensorConfig: delta must be > 0");
  require(std::isfinite(e_bias_), ErrorCode::invalid_argument, "SensorConfig: e_bias must be finite");
  alpha_ = state_.alpha_v_per_m();
}

SensorConfig SensorConfig::with_delta(double delta) const {
  return {sys_, med_, state_, budget_, delta, e_bias_};
}

SensorConfig SensorConfig::with_bias(double e_bias) const {
  return {sys_, med_, state_, budget_, delta_, e_bias};
}

SensorConfig SensorConfig::with_budget(PhotonBudget budget) const {
  return {sys_, med_, state_, budget, delta_, e_bias_};
}

double SensorConfig::line_slope() const {
  return (line(delta_ + kSlopeStep) - line(delta_ - kSlopeStep)) / (2.0 * kSlopeStep);
}

void NoiseSpec::validate() const {
  const bool ok = m_i >= 0.0 && f_i >= 0.0 && sigma_i >= 0.0 && additive_rms_frac >= 0.0 &&
                  std::isfinite(phi_i);
  require(ok, ErrorCode::invalid_argument, "NoiseSpec: magnitudes must be >= 0");
}

void FieldSpec::validate() const {
  require(f_ac > 0.0, ErrorCode::invalid_argument, "FieldSpec: f_ac must be > 0");
  require(a >= 0.0, ErrorCode::invalid_argument, "FieldSpec: amplitude must be >= 0");
  for (const auto& h : harmonics)
    require(h.order >= 1 && h.amplitude >= 0.0, ErrorCode::invalid_argument,
            "FieldSpec: invalid harmonic");
  require(drift.amplitude >= 0.0 && drift.freq >= 0.0, ErrorCode::invalid_argument,
          "FieldSpec: invalid drift");
}

double two_point_signal(const SensorConfig& cfg, double e_field) {
  const double shift = cfg.shift(e_field);
  return cfg.line(cfg.delta() - shift) - cfg.line(-cfg.delta() - shift);
}

double dc_retrieve_unbiased(const SensorConfig& cfg, double measured_rho_ab) {
  const double slope = checked_slope(cfg);
  return std::sqrt(std::abs(measured_rho_ab) / (cfg.alpha() * std::abs(slope)));
}

BiasedRetrieval dc_retrieve_biased(const SensorConfig& cfg, double e_field_true) {
  require(cfg.e_bias() != 0.0, ErrorCode::invalid_argument, "dc_retrieve_biased: zero bias field");
  const double slope = checked_slope(cfg);
  const double e0 = cfg.e_bias();
  BiasedRetrieval out;
  out.rho_ab_delta = two_point_signal(cfg, e0 + e_field_true) - two_point_signal(cfg, -e0 + e_field_true);
  out.e_hat = std::abs(out.rho_ab_delta) / (4.0 * cfg.alpha() * std::abs(slope) * std::abs(e0));
  return out;
}

double fi_dc_biased(const SensorConfig& cfg) {
  return 4.0 * cfg.budget().n0 * information_density(cfg);
}

double min_detectable_field(const SensorConfig& cfg) {
  const double fi = fi_dc_biased(cfg);
  if (!(fi > 0.0))
    throw ModelError(ErrorCode::unresolvable, "min_detectable_field: Fisher information vanishes");
  return 1.0 / std::sqrt(fi);
}

TimeSeries synthesize_field(const FieldSpec& spec, double duration, double sample_rate,
                            double e_bias) {
  spec.validate();
  require(std::isfinite(duration) && duration > 0.0 && std::isfinite(sample_rate) && sample_rate > 0.0,
          ErrorCode::invalid_argument, "synthesize_field: invalid duration or sample rate");
  const double count = std::round(duration * sample_rate);
  require(count >= 2.0, ErrorCode::invalid_argument, "synthesize_field: fewer than two samples");

  TimeSeries series;
  series.sample_rate = sample_rate;
  series.samples.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.time(i);
    double e = e_bias + spec.a * std::cos(kTwoPi * spec.f_ac * t + spec.phi);
    for (const auto& h : spec.harmonics)
      e += h.amplitude * std::cos(kTwoPi * h.order * spec.f_ac * t + h.phase);
    e += spec.drift.amplitude * std::cos(kTwoPi * spec.drift.freq * t + spec.drift.phase);
    series.samples[i] = e;
  }
  return series;
}

SensedSeries sense_timeseries(const SensorConfig& cfg, const TimeSeries& field,
                              const std::optional<NoiseSpec>& noise) {
  field.validate();
  const std::size_t n = field.size();
  SensedSeries out;
  for (TimeSeries* s : {&out.rho_a, &out.rho_b, &out.rho_ab}) {
    s->sample_rate = field.sample_rate;
    s->t0 = field.t0;
    s->samples.resize(n);
  }
  // Quasi-static: each sample sees the steady state at its instantaneous shift.
  for (std::size_t i = 0; i < n; ++i) {
    const double shift = cfg.shift(field.samples[i]);
    out.rho_a.samples[i] = cfg.line(cfg.delta() - shift);
    out.rho_b.samples[i] = cfg.line(-cfg.delta() - shift);
  }
  if (noise) {
    noise->validate();
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = out.rho_a.samples[i] - out.rho_b.samples[i];
      lo = i == 0 ? diff : std::min(lo, diff);
      hi = i == 0 ? diff : std::max(hi, diff);
    }
    const double additive_rms = noise->additive_rms_frac * 0.5 * (hi - lo);

    std::mt19937_64 rng(noise->seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = field.time(i);
      const double common = noise->m_i * std::sin(kTwoPi * noise->f_i * t + noise->phi_i) +
                            noise->sigma_i * gauss(rng);
      const double noise_a = additive_rms * gauss(rng);
      const double noise_b = additive_rms * gauss(rng);
      out.rho_a.samples[i] = (1.0 + common) * out.rho_a.samples[i] + noise_a;
      out.rho_b.samples[i] = (1.0 + common) * out.rho_b.samples[i] + noise_b;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    out.rho_ab.samples[i] = out.rho_a.samples[i] - out.rho_b.samples[i];
  return out;
}

Demodulation demodulate(const TimeSeries& rho_ab, double f_ac, const SensorConfig& cfg) {
  rho_ab.validate();
  require(cfg.e_bias() != 0.0, ErrorCode::invalid_argument, "demodulate: zero bias field");
  require(f_ac > 0.0 && f_ac <= 0.5 * rho_ab.sample_rate, ErrorCode::invalid_argument,
          "demodulate: f_ac must lie in (0, Nyquist]");
  const double duration = static_cast<double>(rho_ab.size()) / rho_ab.sample_rate;
  require(duration * f_ac >= 2.0, ErrorCode::invalid_argument,
          "demodulate: series shorter than two periods");
  const double slope = checked_slope(cfg);

  Demodulation out;
  out.spectrum = dft(rho_ab);
  const std::size_t bin = out.spectrum.nearest_bin(f_ac);
  // The single-sided line at f_ac carries 2 alpha rho0' E0 A.
  out.amplitude_hat = out.spectrum.magnitudes[bin] /
                      (2.0 * cfg.alpha() * std::abs(slope) * std::abs(cfg.e_bias()));
  out.phase = out.spectrum.phases[bin];
  return out;
}

double estimate_frequency(const Spectrum& spec, double f_min, double f_max) {
  return peak_pick(spec, f_min, f_max, 1).front().freq;
}

double fi_ac(const SensorConfig& cfg, double f_ac, double duration) {
  require(f_ac > 0.0, ErrorCode::invalid_argument, "fi_ac: f_ac must be > 0");
  require(duration > 0.0, ErrorCode::invalid_argument, "fi_ac: duration must be > 0");
  const double n_total = cfg.budget().n0 * duration;
  return n_total * information_density(cfg);
}

double fi_ac_numeric(const SensorConfig& cfg, double f_ac, double phi, double duration,
                     std::size_t steps) {
  require(duration > 0.0 && steps >= 2, ErrorCode::invalid_argument, "fi_ac_numeric: bad grid");
  if (steps % 2 == 1) ++steps;
  const double density = 2.0 * cfg.budget().n0 * information_density(cfg);
  auto integrand = [&](double t) {
    const double c = std::cos(kTwoPi * f_ac * t + phi);
    return density * c * c;
  };
  const double h = duration / static_cast<double>(steps);
  double sum = integrand(0.0) + integrand(duration);
  for (std::size_t i = 1; i < steps; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(h * static_cast<double>(i));
  return sum * h / 3.0;
}

}  // namespace rydberg
