#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "pxlap/eigen_solver.hpp"

namespace pxlap::reporting {

/// Any problem with a run configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainConfig {
  int dimension = 1;
  std::vector<Interval> extents{{0.0, 1.0}};
  std::vector<int> nodes{129};
};

struct CheckConfig {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

struct RunConfig {
  DomainConfig domain;
  std::string p = "2";
  std::string a = "0";
  std::string b = "1";
  SolverOptions solver;
  bool refine = false;
  std::vector<CheckConfig> checks;  ///< sorted by name, each at most once
  std::string output = "out";
  std::uint64_t seed = 1;

  GridSpec grid() const;
  ProblemSpec problem() const;
  const CheckConfig* check(const std::string& name) const;
};

/// Names accepted under "checks".
const std::vector<std::string>& known_checks();

/// Validates structure, value ranges, check names and parameters, and that
/// the grid can be built and p, a, b sample to a valid problem.  Throws
/// ConfigError naming the offending key.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical echo of a configuration; parse_run_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

}  // namespace pxlap::reporting
