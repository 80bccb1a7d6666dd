#pragma once

// Deterministic spectral toolkit for uniformly sampled real signals.
//
// Normalization is single-sided amplitude: bin k in (0, N/2) reports
// (2/N)|X_k|, the DC bin and (for even N) the Nyquist bin report (1/N)|X_k|.
// A cosine of amplitude a landing on a bin therefore reads a.

#include <cstddef>
#include <vector>

namespace rydberg {

struct TimeSeries {
  double sample_rate = 1.0;  // Hz
  std::vector<double> samples;
  double t0 = 0.0;  // s

  void validate() const;
  std::size_t size() const noexcept { return samples.size(); }
  double time(std::size_t i) const noexcept {
    return t0 + static_cast<double>(i) / sample_rate;
  }
};

struct Spectrum {
  std::vector<double> freqs;  // Hz, 0 .. Nyquist
  std::vector<double> magnitudes;
  std::vector<double> phases;  // rad
  double bin_width = 0.0;      // Hz

  std::size_t size() const noexcept { return freqs.size(); }
  std::size_t nearest_bin(double f) const;
};

enum class Window { none, hann };

/// Real-input FFT of any length. The Hann window is amplitude-corrected by its coherent gain.
Spectrum dft(const TimeSeries& series, Window window = Window::none);

struct Peak {
  double freq = 0.0;
  double magnitude = 0.0;
};

/// Up to n_peaks largest local maxima with f_min <= f <= f_max, refined by a
/// three-point parabola, sorted by magnitude (descending).
std::vector<Peak> peak_pick(const Spectrum& spec, double f_min, double f_max, std::size_t n_peaks);

/// Median magnitude over bins with f_min <= f <= f_max.
double spectral_floor(const Spectrum& spec, double f_min, double f_max);

}  // namespace rydberg
