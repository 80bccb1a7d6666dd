#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"

namespace rydsim {

struct Flags {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> points;
};

/// Each command writes its datasets into the output directory and a short
/// table to stdout. Model failures surface as rydberg::ModelError.
void cmd_spectrum(const Scenario& sc, const Flags& flags);
void cmd_fisher(const Scenario& sc, const Flags& flags);
void cmd_dc(const Scenario& sc, const Flags& flags);
void cmd_ac(const Scenario& sc, const Flags& flags);
void cmd_cavity(const Scenario& sc, const Flags& flags);

/// Checks command-specific requirements before any file is written; throws
/// ConfigError.
void check_for_command(const std::string& command, const Scenario& sc, const Flags& flags);

}  // namespace rydsim
