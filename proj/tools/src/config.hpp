#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <rydberg/cavity.hpp>
#include <rydberg/eit.hpp>
#include <rydberg/estimation.hpp>
#include <rydberg/readout.hpp>
#include <rydberg/stark.hpp>

namespace rydsim {

/// Anything wrong with the configuration document: exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectrumSettings {
  double delta_c_min = -40.0;
  double delta_c_max = 40.0;
  std::size_t points = 2001;
  rydberg::Observable observable = rydberg::Observable::absorption;
  rydberg::LineModel model = rydberg::LineModel::weak_probe;
  std::vector<double> fields_v_per_m{0.0};
};

struct FisherSettings {
  double delta_c_min = -20.0;
  double delta_c_max = 20.0;
  std::size_t delta_c_points = 801;
  double omega_c_min = 5.0;
  double omega_c_max = 25.0;
  std::size_t omega_c_points = 21;
  rydberg::TradeoffOptions tradeoff;
  double crlb_half_width = 5.0;
  std::size_t crlb_points = 2001;
};

struct DcSettings {
  double e_min = 1e-5;  // V/m
  double e_max = 1.0;
  std::size_t points = 50;
  double delta_c_min = -10.0;
  double delta_c_max = 10.0;
  std::size_t delta_c_points = 2001;
};

struct AcSettings {
  double duration = 10.0;      // s
  double sample_rate = 1000.0; // Hz
  double band_min = 0.5;       // Hz
  double band_max = 200.0;     // Hz
  std::size_t peaks = 5;
};

struct CavitySettings {
  std::size_t scan_points = 20001;
};

struct Scenario {
  rydberg::AtomSystem atom;
  rydberg::OpticalMedium medium = rydberg::default_medium();
  rydberg::StarkState stark;
  rydberg::PhotonBudget budget;
  std::optional<double> delta;  // MHz; FI-optimal when absent
  double e_bias = 1.0;          // V/m
  rydberg::CavityConfig cavity;
  rydberg::FieldSpec field;
  std::optional<rydberg::NoiseSpec> noise;
  std::uint64_t seed = 0;
  std::string output_dir = ".";

  SpectrumSettings spectrum;
  FisherSettings fisher;
  DcSettings dc;
  AcSettings ac;
  CavitySettings cavity_scan;
};

/// Parses and validates a JSON scenario. Unknown keys are rejected.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text);

}  // namespace rydsim
