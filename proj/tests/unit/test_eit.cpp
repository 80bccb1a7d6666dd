#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <rydberg/eit.hpp>
#include <rydberg/error.hpp>

using namespace rydberg;

namespace {

AtomSystem weak_drive() { return {1.0, 10.0, 0.0, 6.066, 0.004}; }
AtomSystem nominal() { return {}; }

}  // namespace

TEST(Coherence, TwoLevelLimit) {
  const AtomSystem sys{1.0, 0.0, 0.0, 6.066, 0.004};
  for (const double dc : {-7.0, 0.0, 3.3}) {
    const auto rho = steady_state_coherence(sys, dc);
    EXPECT_NEAR(rho.real(), 0.0, 1e-15);
    EXPECT_NEAR(rho.imag(), 1.0 / 6.066, 1e-12);
  }
  EXPECT_NEAR(steady_state_coherence(sys, 0.0).imag(), 0.16485, 1e-5);
}

TEST(Coherence, DirectEvaluationAtResonance) {
  const auto rho = steady_state_coherence(weak_drive(), 0.0);
  EXPECT_NEAR(rho.real(), 0.0, 1e-18);
  EXPECT_NEAR(rho.imag(), 0.004 / (6.066 * 0.004 + 100.0), 1e-15);
  EXPECT_NEAR(rho.imag(), 3.999e-5, 1e-8);
}

TEST(Coherence, Parity) {
  const AtomSystem sys = nominal();
  for (double dc = 0.05; dc < 40.0; dc *= 1.7) {
    const auto plus = steady_state_coherence(sys, dc);
    const auto minus = steady_state_coherence(sys, -dc);
    EXPECT_NEAR(plus.imag(), minus.imag(), 1e-12 * std::abs(plus.imag()));
    EXPECT_NEAR(plus.real(), -minus.real(), 1e-12 * std::abs(plus.real()));
  }
  const auto a = steady_state_coherence(sys, 3.0);
  const auto b = steady_state_coherence(sys, -3.0);
  EXPECT_NEAR(std::abs(a + std::conj(b)), 0.0, 1e-15);
}

TEST(Coherence, TwoLevelReductionAtTinyCoupling) {
  AtomSystem sys{2.0, 1e-9, 1.5, 6.066, 0.004};
  const std::complex<double> expected = std::complex<double>(0.0, 2.0) / std::complex<double>(6.066, 3.0);
  EXPECT_NEAR(std::abs(steady_state_coherence(sys, 4.0) - expected), 0.0, 1e-12);
}

TEST(Coherence, DegenerateDenominator) {
  // gamma_r * gamma_e tiny, detunings zero, no coupling.
  const AtomSystem sys{1.0, 0.0, 0.0, 1e-16, 1e-16};
  EXPECT_THROW(
      {
        try {
          steady_state_coherence(sys, 0.0);
        } catch (const ModelError& e) {
          EXPECT_EQ(e.code(), ErrorCode::degenerate_parameters);
          throw;
        }
      },
      ModelError);
}

TEST(AtomSystem, Validation) {
  EXPECT_THROW((AtomSystem{0.0, 15.0, 0.0, 6.066, 0.004}.validate()), ModelError);
  EXPECT_THROW((AtomSystem{2.0, -1.0, 0.0, 6.066, 0.004}.validate()), ModelError);
  EXPECT_THROW((AtomSystem{2.0, 15.0, 0.0, 0.0, 0.004}.validate()), ModelError);
  EXPECT_THROW((AtomSystem{2.0, 15.0, 0.0, 6.066, 0.0}.validate()), ModelError);
  EXPECT_NO_THROW(nominal().validate());
  EXPECT_TRUE(nominal().weak_probe());
  EXPECT_FALSE((AtomSystem{8.0, 15.0, 0.0, 6.066, 0.004}.weak_probe()));
  EXPECT_THROW((OpticalMedium{0.0, 1.0}.validate()), ModelError);
  EXPECT_THROW((OpticalMedium{1.0, 0.0}.validate()), ModelError);
}

TEST(Absorption, EitWindowShape) {
  const AtomSystem sys = weak_drive();
  const auto grid = scan_spectrum(sys, default_medium(), -20.0, 20.0, 4001, Observable::absorption);
  std::size_t centre = 2000;
  EXPECT_DOUBLE_EQ(grid.delta_c[centre], 0.0);
  EXPECT_LT(grid.values[centre], grid.values[centre - 1]);
  EXPECT_LT(grid.values[centre], grid.values[centre + 1]);
  // Flanks rise towards the two-level value.
  EXPECT_GT(grid.values.front(), 100.0 * grid.values[centre]);
}

TEST(Absorption, Evenness) {
  for (const double dc : {0.5, 2.0, 7.0})
    EXPECT_DOUBLE_EQ(absorption(weak_drive(), dc), absorption(weak_drive(), -dc));
}

TEST(Absorption, PassivityRandomSweep) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const AtomSystem sys{0.01 + 5.0 * u(rng), 30.0 * u(rng), -10.0 + 20.0 * u(rng), 0.1 + 10.0 * u(rng),
                         1e-4 + u(rng)};
    const double dc = -50.0 + 100.0 * u(rng);
    ASSERT_GE(absorption(sys, dc), 0.0);
    ASSERT_LE(transmittance(sys, default_medium(), dc), 1.0);
  }
}

TEST(Absorption, DensityMatrixMatchesWeakProbe) {
  AtomSystem sys = nominal();
  sys.omega_p = 0.01;
  for (const double dc : {0.0, 1.0, 2.5, 9.0}) {
    const auto closed = steady_state_coherence(sys, dc);
    const auto full = density_matrix_coherence(sys, dc);
    EXPECT_NEAR(full.imag(), closed.imag(), 1e-4 * std::abs(closed.imag()) + 1e-12);
    EXPECT_NEAR(full.real(), closed.real(), 1e-4 * std::abs(closed.real()) + 1e-12);
  }
}

TEST(Transmittance, BeerLambert) {
  const AtomSystem two_level{1.0, 0.0, 0.0, 6.066, 0.004};
  EXPECT_NEAR(transmittance(two_level, {1.0, 1.0}, 0.0), 0.8480, 1e-4);
  EXPECT_NEAR(transmittance(two_level, {1.0, 2.0}, 0.0), 2.0 * std::exp(-1.0 / 6.066), 1e-14);
}

TEST(Transmittance, CalibratedLinewidth) {
  const auto grid = scan_spectrum(nominal(), default_medium(), -40.0, 40.0, 16001, Observable::transmittance);
  EXPECT_NEAR(fwhm(grid), 3.7, 3.7 * 1e-6);
}

TEST(ScanSpectrum, ExtremaAtCentre) {
  const auto t = scan_spectrum(nominal(), default_medium(), -20.0, 20.0, 4001, Observable::transmittance);
  const auto a = scan_spectrum(nominal(), default_medium(), -20.0, 20.0, 4001, Observable::absorption);
  const auto tmax = std::max_element(t.values.begin(), t.values.end()) - t.values.begin();
  const auto amin = std::min_element(a.values.begin(), a.values.end()) - a.values.begin();
  EXPECT_EQ(tmax, 2000);
  EXPECT_EQ(amin, 2000);
  EXPECT_DOUBLE_EQ(t.delta_c.back(), 20.0);
  EXPECT_NO_THROW(t.validate());
}

TEST(ScanSpectrum, DegenerateRange) {
  EXPECT_THROW(scan_spectrum(nominal(), default_medium(), 0.0, 0.0, 2, Observable::absorption), ModelError);
  EXPECT_THROW(scan_spectrum(nominal(), default_medium(), -1.0, 1.0, 1, Observable::absorption), ModelError);
}

TEST(SpectralSlope, ZeroAtCentreAndOdd) {
  const auto med = default_medium();
  for (const auto obs : {Observable::absorption, Observable::transmittance}) {
    EXPECT_NEAR(spectral_slope(nominal(), med, 0.0, obs), 0.0, 1e-10);
    const double plus = spectral_slope(nominal(), med, 2.0, obs);
    const double minus = spectral_slope(nominal(), med, -2.0, obs);
    EXPECT_NEAR(plus, -minus, 1e-10 * std::abs(plus));
  }
}

TEST(SpectralSlope, MatchesCubicFit) {
  // Five-point stencil derivative as the fitted-cubic reference.
  const double h = 1e-2;
  for (const double x : {0.7, 2.0, 5.5}) {
    auto f = [&](double d) { return absorption(nominal(), d); };
    const double fitted = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
    const double fd = spectral_slope(nominal(), default_medium(), x, Observable::absorption);
    EXPECT_NEAR(fd, fitted, 1e-6 * std::abs(fitted) + 1e-12);
  }
}

TEST(SpectralSlope, PeakTransmittanceSlope) {
  const double x = max_slope_detuning(nominal(), default_medium(), Observable::transmittance,
                                      LineModel::weak_probe, 0.0, 20.0);
  const double k = std::abs(spectral_slope(nominal(), default_medium(), x, Observable::transmittance));
  // Per MHz; 3.8e-7 per Hz.
  EXPECT_NEAR(k * 1e-6, 3.8e-7, 0.05 * 3.8e-7);
}

TEST(Fwhm, Lorentzian) {
  SpectrumGrid g;
  for (int i = -20000; i <= 20000; ++i) {
    const double x = i * 0.005;
    g.delta_c.push_back(x);
    g.values.push_back(1.0 / (1.0 + (x / 2.0) * (x / 2.0)));
  }
  EXPECT_NEAR(fwhm(g), 4.0, 0.02);
}

TEST(Fwhm, MonotoneGridIsNotAPeak) {
  SpectrumGrid g;
  for (int i = 0; i < 100; ++i) {
    g.delta_c.push_back(i);
    g.values.push_back(i);
  }
  try {
    fwhm(g);
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_a_peak);
  }
}

TEST(Ats, FieldConversion) {
  EXPECT_DOUBLE_EQ(ats_field_amplitude(0.0, 1.0), 0.0);
  EXPECT_NEAR(ats_field_amplitude(30.0, 1.0), 21.213, 1e-3);
  EXPECT_DOUBLE_EQ(ats_field_amplitude(20.0, 0.7), 2.0 * ats_field_amplitude(10.0, 0.7));
  EXPECT_THROW(ats_field_amplitude(1.0, 0.0), ModelError);
  EXPECT_THROW(ats_field_amplitude(-1.0, 1.0), ModelError);
}

TEST(CalibrateBeta, ReproducesDefaultAndIsIdempotent) {
  const double beta = calibrate_beta(nominal(), 3.7);
  EXPECT_NEAR(beta, kDefaultBeta, 1e-6 * kDefaultBeta);
  const auto grid = scan_spectrum(nominal(), {beta, 1.0}, -40.0, 40.0, 16001, Observable::transmittance);
  const double achieved = fwhm(grid);
  EXPECT_NEAR(calibrate_beta(nominal(), achieved), beta, 0.005 * beta);
}

TEST(CalibrateBeta, UnreachableTarget) {
  try {
    calibrate_beta(nominal(), 500.0);
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::bracket_exhausted);
  }
}

TEST(MaxSlope, DensityMatrixPoint) {
  const double x = max_slope_detuning(nominal(), default_medium(), Observable::absorption,
                                      LineModel::density_matrix, 0.5, 30.0);
  EXPECT_NEAR(x, 9.880, 0.01);
}
