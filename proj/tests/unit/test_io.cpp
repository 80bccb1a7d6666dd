#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include <rydberg/io.hpp>

using namespace rydberg;

TEST(Io, TimeSeriesRoundTrip) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  TimeSeries s{1000.0, std::vector<double>(257), 0.0};
  for (double& v : s.samples) v = g(rng) * 1e-7;
  const auto path = (std::filesystem::temp_directory_path() / "rydberg_io_ts.csv").string();
  write_timeseries(path, s);
  const auto back = read_timeseries(path);
  EXPECT_EQ(back.samples, s.samples);
  EXPECT_NEAR(back.sample_rate, 1000.0, 1e-9);
  std::remove(path.c_str());
}

TEST(Io, SpectrumRoundTrip) {
  TimeSeries s{100.0, std::vector<double>(100), 0.0};
  for (std::size_t i = 0; i < s.size(); ++i) s.samples[i] = std::sin(0.3 * i) + 1.0 / (i + 3.0);
  const auto spec = dft(s);
  const auto path = (std::filesystem::temp_directory_path() / "rydberg_io_spec.csv").string();
  write_spectrum(path, spec);
  const auto back = read_spectrum(path);
  EXPECT_EQ(back.freqs, spec.freqs);
  EXPECT_EQ(back.magnitudes, spec.magnitudes);
  EXPECT_EQ(back.phases, spec.phases);
  std::remove(path.c_str());
}

TEST(Io, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_THROW(write_csv("/nonexistent/dir/x.csv", {"a"}, {{1.0}}), std::runtime_error);
  EXPECT_THROW(write_csv("x.csv", {"a", "b"}, {{1.0}, {1.0, 2.0}}), std::invalid_argument);
}
