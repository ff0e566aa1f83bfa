#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pxlap/plot_data.hpp"
#include "pxlap/run.hpp"

using namespace pxlap::reporting;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config(const std::string& out) {
  return {{"domain", {{"dimension", 1}, {"extents", {{0, 1}}}, {"nodes", {129}}}},
          {"p", "2+x"},
          {"a", "0"},
          {"b", "1"},
          {"checks", json::object()},
          {"output", out},
          {"seed", 4}};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pxlap_test_" + name);
  fs::remove_all(p);
  return p;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(RunConfig, DefaultsAndRoundTrip) {
  const RunConfig c = parse_run_config(base_config("o"));
  EXPECT_EQ(c.domain.nodes[0], 129);
  EXPECT_EQ(c.seed, 4u);
  EXPECT_EQ(c.solver.seed, 4u);
  const json echo = to_json(c);
  EXPECT_EQ(to_json(parse_run_config(echo)), echo);
}

TEST(RunConfig, ExponentOneNamesTheBound) {
  json j = base_config("o");
  j["p"] = "1";
  try {
    parse_run_config(j);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("p:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("1 < p(x)"), std::string::npos) << msg;
  }
}

TEST(RunConfig, StructuralErrors) {
  auto bad = [](auto mutate) {
    json j = base_config("o");
    mutate(j);
    EXPECT_THROW(parse_run_config(j), ConfigError) << j.dump();
  };
  bad([](json& j) { j["unknown"] = 1; });
  bad([](json& j) { j["domain"]["nodes"] = {2}; });
  bad([](json& j) { j["domain"]["dimension"] = 3; });
  bad([](json& j) { j["a"] = "-1"; });
  bad([](json& j) { j["b"] = "sin("; });
  bad([](json& j) { j["solver"] = {{"tolerance", -1.0}}; });
  bad([](json& j) { j["solver"] = {{"step_rule", "armijo"}}; });
  bad([](json& j) { j["checks"] = {{"no_such_check", true}}; });
  bad([](json& j) { j["checks"] = {{"harnack", {{"R", 0.9}}}}; });
  bad([](json& j) { j["checks"] = {{"oscillation", {{"radii", {0.25, 0.125}}}}}; });
  bad([](json& j) { j["checks"] = {{"sobolev_poincare", true}}; });  // 1D
  bad([](json& j) { j["checks"] = {{"caccioppoli", {{"radii", {{0.3, 0.2, 0.1}}}}}}; });
}

TEST(RunConfig, MissingFileIsConfigError) {
  EXPECT_THROW(load_run_config("/nonexistent/config.json"), ConfigError);
  std::ostringstream err;
  EXPECT_EQ(run_config_file("/nonexistent/config.json", {}, err), kExitConfigError);
  EXPECT_FALSE(err.str().empty());
}

TEST(Run, ChecksDisabledGivesSolverSectionsOnly) {
  const fs::path out = scratch("nochecks");
  const RunOutcome o = run_config(parse_run_config(base_config(out.string())));
  EXPECT_EQ(o.exit_code, kExitPass);
  EXPECT_FALSE(o.report.contains("checks"));
  for (const char* k : {"artifact", "config", "solver", "energy", "exponent", "eigenfunction", "trace", "timing"}) {
    EXPECT_TRUE(o.report.contains(k)) << k;
  }
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "eigenfunction.csv"));
  EXPECT_TRUE(fs::exists(out / "trace.csv"));
  EXPECT_EQ(json::parse(slurp(out / "report.json")), o.report);
  EXPECT_EQ(count_lines(slurp(out / "eigenfunction.csv")), 129 + 1);
}

TEST(Run, EveryEnabledCheckAppearsOnceWithWitnessCsv) {
  const fs::path out = scratch("checks");
  json j = base_config(out.string());
  j["checks"] = {{"eigenvalue_identity", true}, {"nonexistence", true}, {"hopf", true}, {"simplicity", true},
                 {"bounds", {{"samples", 8}}}, {"moser", true}};
  const RunOutcome o = run_config(parse_run_config(j));
  EXPECT_EQ(o.exit_code, kExitPass);
  ASSERT_TRUE(o.report["checks"].is_array());
  EXPECT_EQ(o.report["checks"].size(), 6u);
  std::vector<std::string> names;
  for (const auto& c : o.report["checks"]) names.push_back(c["name"]);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
  for (const auto& n : names) EXPECT_TRUE(fs::exists(out / ("check_" + n + ".csv"))) << n;
}

TEST(Run, FailingCheckGivesExitFour) {
  const fs::path out = scratch("failing");
  json j = base_config(out.string());
  j["checks"] = {{"moser", {{"x0", 0.8}}}};
  EXPECT_EQ(run_config(parse_run_config(j)).exit_code, kExitCheckFailure);
}

TEST(Run, NonConvergenceWritesReportAndGivesExitThree) {
  const fs::path out = scratch("noconv");
  json j = base_config(out.string());
  j["solver"] = {{"max_iterations", 1}, {"restarts", 1}};
  j["checks"] = {{"hopf", true}};
  const RunOutcome o = run_config(parse_run_config(j));
  EXPECT_EQ(o.exit_code, kExitConvergenceFailure);
  EXPECT_FALSE(o.report["solver"]["converged"].get<bool>());
  EXPECT_FALSE(o.report.contains("checks"));
  EXPECT_TRUE(fs::exists(out / "report.json"));
}

TEST(Run, SameSeedSameReport) {
  const fs::path out = scratch("determinism");
  json j = base_config(out.string());
  j["checks"] = {{"nonexistence", true}, {"caccioppoli", true}};
  const RunConfig c = parse_run_config(j);
  const std::string a = dump_report(without_timing(run_config(c).report));
  const std::string b = dump_report(without_timing(run_config(c).report));
  EXPECT_EQ(a, b);
}

TEST(PlotData, EigenfunctionAndTraceRows) {
  const fs::path out = scratch("plot");
  json j = base_config(out.string());
  j["checks"] = {{"oscillation", true}};
  const RunOutcome o = run_config(parse_run_config(j));

  std::ostringstream ef;
  emit_plot_data(out / "report.json", "eigenfunction", ef);
  EXPECT_EQ(ef.str().substr(0, 4), "x,u\n");
  EXPECT_EQ(count_lines(ef.str()), 129 + 1);

  std::ostringstream tr;
  emit_plot_data(o.report, "trace", tr);
  EXPECT_EQ(count_lines(tr.str()), static_cast<int>(o.report["trace"].size()) + 1);

  std::ostringstream osc;
  emit_plot_data(o.report, "oscillation", osc);
  EXPECT_EQ(osc.str().substr(0, 12), "R,osc,bound\n");
  EXPECT_EQ(count_lines(osc.str()), 4 + 1);
  EXPECT_EQ(osc.str().find(';'), std::string::npos);
}

TEST(PlotData, MissingSectionAndUnknownKind) {
  json report = {{"trace", json::array()}};
  std::ostringstream os;
  EXPECT_THROW(emit_plot_data(report, "eigenfunction", os), std::invalid_argument);
  EXPECT_THROW(emit_plot_data(report, "oscillation", os), std::invalid_argument);
  EXPECT_THROW(emit_plot_data(report, "histogram", os), std::invalid_argument);
}

TEST(BundledConfigs, FlagshipParsesAndBadExponentRejected) {
  const RunConfig c = load_run_config(fs::path(PXLAP_CONFIG_DIR) / "interval_p2.json");
  EXPECT_EQ(c.domain.nodes[0], 512);
  EXPECT_EQ(c.p, "2");
  EXPECT_THROW(load_run_config(fs::path(PXLAP_CONFIG_DIR) / "invalid_p1.json"), ConfigError);
  for (const char* name : {"interval_variable.json", "interval_p15.json", "square_p2.json", "square_variable.json"}) {
    EXPECT_NO_THROW(load_run_config(fs::path(PXLAP_CONFIG_DIR) / name)) << name;
  }
}
