#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "lrc/fourier.hpp"
#include "lrc/io.hpp"
#include "lrc/maps.hpp"

namespace lrc {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitSolver = 2,
  kExitInfeasible = 3,
  kExitBudget = 4,
};

inline constexpr double kVerifyBudget = 5e-2;

struct VerifySettings {
  double delta = 1e-3;
  std::size_t bins = std::size_t{1} << 14;
};

// A parsed job file. Series fields accept a FourierSeries object, a preset
// name ("zero", "sin", "sin2", "cos", "cos2", "mixed") or {"terms": [...]}
// with entries {"kind": "sin"|"cos", "k": int, "amp": real}.
struct JobConfig {
  CircleMap map = CircleMap::linear(2);
  FourierSeries target;
  std::optional<FourierSeries> epsilon;
  SobolevWeights weights{0.0, 0.0, 0.0, 1e-3};  // used when "weights" is absent
  int order = kDefaultOrder;
  std::optional<VerifySettings> verify;
  std::size_t grid = 256;  // CSV sample count
};

// Throws InvalidArgument (or a json parse error) on invalid input.
JobConfig parse_job(const Json& j);
// Canonical form: every series expanded to coefficients.
Json to_json(const JobConfig& config);
// FNV-1a of the canonical JSON text, as 16 hex digits.
std::string config_hash(const JobConfig& config);

FourierSeries series_preset(const std::string& name);

int cmd_density(const JobConfig& config, const std::filesystem::path& out_dir,
                std::ostream& err);
int cmd_respond(const JobConfig& config, const std::filesystem::path& out_dir,
                std::ostream& err);
int cmd_control(const JobConfig& config, const std::filesystem::path& out_dir,
                std::ostream& err);
int cmd_verify(const JobConfig& config, const std::filesystem::path& out_dir,
               std::ostream& err);

// Reads the config file, applies the overrides and dispatches on `command`
// (density | respond | control | verify). Returns an ExitCode.
int run_command(const std::string& command,
                const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir,
                std::optional<int> modes, std::optional<std::size_t> grid,
                std::ostream& err);

}  // namespace lrc
