#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include <rydberg/error.hpp>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rydberg EIT electrometry simulator"};
  app.require_subcommand(1);

  std::string config_path;
  rydsim::Flags flags;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t points = 0;

  const char* names[] = {"spectrum", "fisher", "dc", "ac", "cavity"};
  const char* help[] = {"EIT spectra for a list of fields", "Fisher-information maps and trade-off",
                        "biased DC retrieval and sensitivity", "AC readout spectra",
                        "free-space vs cavity comparison"};
  for (int i = 0; i < 5; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", config_path, "scenario JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "noise seed (overrides seed)");
    sub->add_option("--points", points, "number of points of the main scan");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  if (sub->count("--out")) flags.out = out;
  if (sub->count("--seed")) flags.seed = seed;
  if (sub->count("--points")) flags.points = points;

  rydsim::Scenario scenario;
  try {
    scenario = rydsim::load_scenario(config_path);
    rydsim::check_for_command(command, scenario, flags);
  } catch (const rydsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    if (command == "spectrum") rydsim::cmd_spectrum(scenario, flags);
    else if (command == "fisher") rydsim::cmd_fisher(scenario, flags);
    else if (command == "dc") rydsim::cmd_dc(scenario, flags);
    else if (command == "ac") rydsim::cmd_ac(scenario, flags);
    else rydsim::cmd_cavity(scenario, flags);
  } catch (const rydberg::ModelError& e) {
    std::fprintf(stderr, "model error (%s): %s\n", rydberg::to_string(e.code()), e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
