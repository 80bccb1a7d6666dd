#include "rydberg/sigproc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "rydberg/error.hpp"

namespace rydberg {
namespace {

using Complex = std::complex<double>;

// FFTW's planner is not thread-safe; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Bins 0..n/2 of the real-input DFT.
std::vector<Complex> real_dft(std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), x.data(),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

void TimeSeries::validate() const {
  if (!(std::isfinite(sample_rate) && sample_rate > 0.0))
    throw ModelError(ErrorCode::invalid_argument, "TimeSeries: sample_rate must be > 0");
  for (const double v : samples)
    if (!std::isfinite(v)) throw ModelError(ErrorCode::invalid_argument, "TimeSeries: non-finite sample");
}

std::size_t Spectrum::nearest_bin(double f) const {
  if (freqs.empty()) throw ModelError(ErrorCode::invalid_argument, "Spectrum: empty");
  const double idx = std::round(f / bin_width);
  if (idx < 0.0) return 0;
  return std::min(static_cast<std::size_t>(idx), freqs.size() - 1);
}

Spectrum dft(const TimeSeries& series, Window window) {
  series.validate();
  const std::size_t n = series.size();
  if (n < 2) throw ModelError(ErrorCode::invalid_argument, "dft: need at least two samples");

  std::vector<double> x = series.samples;
  if (window == Window::hann) {
    double gain = 0.0;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
      gain += w[i];
    }
    gain /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] *= w[i] / gain;
  }

  std::vector<Complex> bins = real_dft(x);

  Spectrum spec;
  const std::size_t half = n / 2;
  spec.bin_width = series.sample_rate / static_cast<double>(n);
  spec.freqs.resize(half + 1);
  spec.magnitudes.resize(half + 1);
  spec.phases.resize(half + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= half; ++k) {
    const bool edge = k == 0 || (n % 2 == 0 && k == half);
    // DC and Nyquist are real for real input; drop rounding residue.
    if (edge) bins[k] = Complex(bins[k].real(), 0.0);
    spec.freqs[k] = static_cast<double>(k) * spec.bin_width;
    spec.magnitudes[k] = (edge ? 1.0 : 2.0) * inv_n * std::abs(bins[k]);
    spec.phases[k] = edge ? (bins[k].real() < 0.0 ? std::numbers::pi : 0.0) : std::arg(bins[k]);
  }
  return spec;
}

std::vector<Peak> peak_pick(const Spectrum& spec, double f_min, double f_max, std::size_t n_peaks) {
  const std::size_t n = spec.size();
  if (n < 3 || !(f_max > f_min))
    throw ModelError(ErrorCode::invalid_argument, "peak_pick: invalid band");
  const auto& m = spec.magnitudes;
  std::vector<Peak> peaks;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (spec.freqs[k] < f_min || spec.freqs[k] > f_max) continue;
    if (!(m[k] > m[k - 1] && m[k] >= m[k + 1])) continue;
    const double denom = m[k - 1] - 2.0 * m[k] + m[k + 1];
    double offset = 0.0;
    if (denom != 0.0) offset = std::clamp(0.5 * (m[k - 1] - m[k + 1]) / denom, -0.5, 0.5);
    peaks.push_back({spec.freqs[k] + offset * spec.bin_width,
                     m[k] - 0.25 * (m[k - 1] - m[k + 1]) * offset});
  }
  if (peaks.empty()) throw ModelError(ErrorCode::not_a_peak, "peak_pick: no local maximum in band");
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
  if (peaks.size() > n_peaks) peaks.resize(n_peaks);
  return peaks;
}

double spectral_floor(const Spectrum& spec, double f_min, double f_max) {
  std::vector<double> band;
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (spec.freqs[k] >= f_min && spec.freqs[k] <= f_max) band.push_back(spec.magnitudes[k]);
  if (band.empty()) throw ModelError(ErrorCode::invalid_argument, "spectral_floor: empty band");
  const auto mid = band.begin() + static_cast<std::ptrdiff_t>(band.size() / 2);
  std::nth_element(band.begin(), mid, band.end());
  return *mid;
}

}  // namespace rydberg
