#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <vector>

#include "pxlap/property_report.hpp"
#include "pxlap/run_config.hpp"

namespace pxlap::reporting {

enum ExitCode : int {
  kExitPass = 0,
  kExitConfigError = 2,
  kExitConvergenceFailure = 3,
  kExitCheckFailure = 4,
};

struct RunOptions {
  std::optional<std::filesystem::path> out;  ///< overrides the config's output directory
  std::optional<std::uint64_t> seed;         ///< overrides the config's seed
  bool run_checks = true;                    ///< false: solver sections only
  std::ostream* log = nullptr;               ///< progress lines, none when null
};

struct RunOutcome {
  nlohmann::json report;
  int exit_code = kExitPass;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> files;  ///< everything written, report.json first
  harness::PropertyReport checks;
};

/// build_grid -> sample fields -> solve -> enabled checks, then writes
/// report.json, eigenfunction.csv, trace.csv and check_<name>.csv witness
/// tables into the output directory.  A run that does not converge still
/// writes its report and skips the checks.  Throws ConfigError when a check
/// parameter turns out to be unusable.
RunOutcome run_config(const RunConfig& config, const RunOptions& opts = {});

/// Loads and runs a config file.  Config problems are reported on `err` and
/// give kExitConfigError.
int run_config_file(const std::filesystem::path& path, const RunOptions& opts, std::ostream& err);

/// Report without its "timing" member, the only part that varies between
/// identical runs.
nlohmann::json without_timing(const nlohmann::json& report);

/// Serialised report.json text (two-space indent, trailing newline).
std::string dump_report(const nlohmann::json& report);

}  // namespace pxlap::reporting
