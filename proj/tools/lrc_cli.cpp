// Command-line front end: density | respond | control | verify.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lrc/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Linear response and control of expanding circle maps"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  std::optional<int> modes;
  std::optional<std::size_t> grid;

  const char* commands[][2] = {
      {"density", "Invariant density of the map"},
      {"respond", "Density response to the perturbation 'epsilon'"},
      {"control", "Two-step and minimal-norm perturbations for 'target'"},
      {"verify", "Ulam finite-difference check of the control solutions"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Job file (JSON)")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--modes", modes, "Truncation order N (overrides config)");
    sub->add_option("--grid", grid, "CSV sample count (overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lrc::kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return lrc::run_command(command, config, out_dir, modes, grid, std::cerr);
}
