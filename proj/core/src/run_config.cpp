#include "pxlap/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "pxlap/level_set.hpp"

namespace pxlap::reporting {

namespace {

using nlohmann::json;

enum class Kind { Number, Integer, NumberList, Point, Triples, String };

// Accepted parameters per check.
const std::map<std::string, std::map<std::string, Kind>>& check_params() {
  static const std::map<std::string, std::map<std::string, Kind>> table = {
      {"bounds", {{"samples", Kind::Integer}, {"seed", Kind::Integer}}},
      {"caccioppoli",
       {{"center", Kind::Point}, {"levels", Kind::NumberList}, {"radii", Kind::Triples}, {"factor", Kind::Number}}},
      {"comparison", {{"f1", Kind::String}, {"f2", Kind::String}, {"tolerance", Kind::Number}}},
      {"eigenvalue_identity", {{"tolerance", Kind::Number}}},
      {"harnack", {{"center", Kind::Point}, {"R", Kind::Number}, {"factor", Kind::Number}}},
      {"hopf", {{"margin", Kind::Number}}},
      {"moser",
       {{"C", Kind::Number},
        {"B", Kind::Number},
        {"beta", Kind::Number},
        {"x0", Kind::Number},
        {"iterations", Kind::Integer}}},
      {"nonexistence", {{"factors", Kind::NumberList}, {"tolerance", Kind::Number}}},
      {"oscillation",
       {{"center", Kind::Point}, {"radii", Kind::NumberList}, {"min_exponent", Kind::Number}, {"factor", Kind::Number}}},
      {"simplicity", {{"seed_offset", Kind::Integer}, {"threshold", Kind::Number}}},
      {"sobolev_poincare", {{"center", Kind::Point}, {"R", Kind::Number}, {"gamma", Kind::Number}}},
  };
  return table;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void require_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(where + "." + key, "unknown key");
  }
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::int64_t get_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

void check_kind(const json& v, Kind kind, const std::string& where, int dimension) {
  switch (kind) {
    case Kind::Number:
      get_number(v, where);
      break;
    case Kind::Integer:
      get_integer(v, where);
      break;
    case Kind::String:
      get_string(v, where);
      break;
    case Kind::NumberList:
      if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of numbers");
      for (const json& x : v) get_number(x, where);
      break;
    case Kind::Point:
      if (!v.is_array() || static_cast<int>(v.size()) != dimension) {
        fail(where, "expected " + std::to_string(dimension) + " coordinates");
      }
      for (const json& x : v) get_number(x, where);
      break;
    case Kind::Triples:
      if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of [s, t, R] triples");
      for (const json& t : v) {
        if (!t.is_array() || t.size() != 3) fail(where, "expected [s, t, R] triples");
        for (const json& x : t) get_number(x, where);
      }
      break;
  }
}

Point point_or_center(const json& params, const GridSpec& grid) {
  Point c{0.0, 0.0};
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    const Interval& e = grid.extent(axis);
    c[axis] = 0.5 * (e.lo + e.hi);
  }
  if (params.contains("center")) {
    for (int axis = 0; axis < grid.dimension(); ++axis) c[axis] = params["center"][axis].get<double>();
  }
  return c;
}

void require_ball(const GridSpec& grid, const Point& c, double R, const std::string& where) {
  if (!(R > 0.0)) fail(where, "radius must be positive");
  if (!ball_inside(grid, {c, R})) fail(where, "ball of radius " + std::to_string(R) + " leaves the domain");
}

// Range checks that need the grid; defaults mirror run.cpp.
void check_semantics(const CheckConfig& c, const GridSpec& grid) {
  const json& p = c.params;
  const std::string where = "checks." + c.name;
  auto positive = [&](const char* key) {
    if (p.contains(key) && !(p[key].get<double>() > 0.0)) fail(where + "." + key, "must be positive");
  };
  if (c.name == "caccioppoli") {
    if (p.contains("levels")) {
      for (const json& k : p["levels"]) {
        if (!(k.get<double>() > 0.0)) fail(where + ".levels", "levels must be positive");
      }
    }
    if (p.contains("radii")) {
      const Point ctr = point_or_center(p, grid);
      for (const json& t : p["radii"]) {
        const double s = t[0].get<double>(), tt = t[1].get<double>(), R = t[2].get<double>();
        if (!(0.0 < s && s < tt && tt < R && R < 1.0)) fail(where + ".radii", "need 0 < s < t < R < 1");
        require_ball(grid, ctr, R, where + ".radii");
      }
    }
    positive("factor");
  } else if (c.name == "harnack") {
    positive("R");
    positive("factor");
    if (p.contains("R")) require_ball(grid, point_or_center(p, grid), p["R"].get<double>(), where + ".R");
  } else if (c.name == "oscillation") {
    if (p.contains("radii")) {
      if (p["radii"].size() < 3) fail(where + ".radii", "at least 3 radii are needed");
      for (const json& R : p["radii"]) require_ball(grid, point_or_center(p, grid), R.get<double>(), where + ".radii");
    }
    positive("factor");
  } else if (c.name == "sobolev_poincare") {
    if (grid.dimension() != 2) fail(where, "needs a 2D domain (the exponent a n/(n-1) is undefined for n = 1)");
    positive("R");
    positive("gamma");
    if (p.contains("R")) require_ball(grid, point_or_center(p, grid), p["R"].get<double>(), where + ".R");
  } else if (c.name == "moser") {
    if (p.contains("C") && !(p["C"].get<double>() > 0.0)) fail(where + ".C", "must be positive");
    if (p.contains("B") && !(p["B"].get<double>() > 1.0)) fail(where + ".B", "must exceed 1");
    if (p.contains("beta") && !(p["beta"].get<double>() > 0.0)) fail(where + ".beta", "must be positive");
    if (p.contains("x0") && !(p["x0"].get<double>() >= 0.0)) fail(where + ".x0", "must be nonnegative");
    if (p.contains("iterations") && p["iterations"].get<std::int64_t>() < 0) fail(where + ".iterations", "negative");
  } else if (c.name == "bounds") {
    if (p.contains("samples") && p["samples"].get<std::int64_t>() < 1) fail(where + ".samples", "must be >= 1");
  } else if (c.name == "simplicity") {
    if (p.contains("seed_offset") && p["seed_offset"].get<std::int64_t>() < 1) {
      fail(where + ".seed_offset", "must be >= 1");
    }
    positive("threshold");
  } else if (c.name == "eigenvalue_identity" || c.name == "nonexistence" || c.name == "comparison") {
    positive("tolerance");
    if (c.name == "nonexistence" && p.contains("factors")) {
      for (const json& f : p["factors"]) {
        if (!(f.get<double>() > 0.0)) fail(where + ".factors", "factors must be positive");
      }
    }
  }
  if (c.name == "comparison") {
    for (const char* key : {"f1", "f2"}) {
      if (!p.contains(key)) continue;
      try {
        sample_field(p[key].get<std::string>(), grid, Locus::Nodes);
      } catch (const std::exception& e) {
        fail(where + "." + key, e.what());
      }
    }
  } else if (c.name == "hopf") {
    if (p.contains("margin") && !(p["margin"].get<double>() >= 0.0)) fail(where + ".margin", "must be >= 0");
  }
}

}  // namespace

GridSpec RunConfig::grid() const { return build_grid(domain.dimension, domain.extents, domain.nodes); }

ProblemSpec RunConfig::problem() const { return ProblemSpec::from_expressions(grid(), p, a, b); }

const CheckConfig* RunConfig::check(const std::string& name) const {
  for (const CheckConfig& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, params] : check_params()) v.push_back(name);
    return v;
  }();
  return names;
}

RunConfig parse_run_config(const json& j) {
  RunConfig c;
  require_keys(j, "config", {"domain", "p", "a", "b", "solver", "checks", "output", "seed"});

  if (!j.contains("domain")) fail("domain", "missing");
  const json& d = j["domain"];
  require_keys(d, "domain", {"dimension", "extents", "nodes"});
  if (!d.contains("dimension") || !d.contains("extents") || !d.contains("nodes")) {
    fail("domain", "needs dimension, extents and nodes");
  }
  c.domain.dimension = static_cast<int>(get_integer(d["dimension"], "domain.dimension"));
  if (c.domain.dimension != 1 && c.domain.dimension != 2) fail("domain.dimension", "must be 1 or 2");
  const auto dim = static_cast<std::size_t>(c.domain.dimension);
  if (!d["extents"].is_array() || d["extents"].size() != dim) fail("domain.extents", "need one [lo, hi] per axis");
  if (!d["nodes"].is_array() || d["nodes"].size() != dim) fail("domain.nodes", "need one node count per axis");
  c.domain.extents.clear();
  c.domain.nodes.clear();
  for (std::size_t axis = 0; axis < dim; ++axis) {
    const json& e = d["extents"][axis];
    if (!e.is_array() || e.size() != 2) fail("domain.extents", "need [lo, hi] pairs");
    c.domain.extents.push_back({get_number(e[0], "domain.extents"), get_number(e[1], "domain.extents")});
    const std::int64_t n = get_integer(d["nodes"][axis], "domain.nodes");
    if (n < 3 || n > 1'000'000) fail("domain.nodes", "node counts must lie in [3, 1000000]");
    c.domain.nodes.push_back(static_cast<int>(n));
  }

  if (j.contains("p")) c.p = get_string(j["p"], "p");
  if (j.contains("a")) c.a = get_string(j["a"], "a");
  if (j.contains("b")) c.b = get_string(j["b"], "b");
  if (j.contains("output")) c.output = get_string(j["output"], "output");
  if (j.contains("seed")) {
    const std::int64_t s = get_integer(j["seed"], "seed");
    if (s < 0) fail("seed", "must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    require_keys(s, "solver", {"max_iterations", "tolerance", "t_min", "t_max", "restarts", "refine", "step_rule"});
    if (s.contains("max_iterations")) {
      c.solver.max_iterations = static_cast<int>(get_integer(s["max_iterations"], "solver.max_iterations"));
    }
    if (s.contains("tolerance")) c.solver.tolerance = get_number(s["tolerance"], "solver.tolerance");
    if (s.contains("t_min")) c.solver.t_min = get_number(s["t_min"], "solver.t_min");
    if (s.contains("t_max")) c.solver.t_max = get_number(s["t_max"], "solver.t_max");
    if (s.contains("restarts")) c.solver.restarts = static_cast<int>(get_integer(s["restarts"], "solver.restarts"));
    if (s.contains("step_rule") && get_string(s["step_rule"], "solver.step_rule") != "backtracking") {
      fail("solver.step_rule", "only \"backtracking\" is supported");
    }
    if (s.contains("refine")) {
      if (!s["refine"].is_boolean()) fail("solver.refine", "expected a boolean");
      c.refine = s["refine"].get<bool>();
    }
  }
  c.solver.seed = c.seed;
  try {
    c.solver.validate();
  } catch (const std::invalid_argument& e) {
    fail("solver", e.what());
  }

  if (j.contains("checks")) {
    const json& checks = j["checks"];
    if (!checks.is_object()) fail("checks", "expected an object keyed by check name");
    for (const auto& [name, params] : checks.items()) {
      const auto it = check_params().find(name);
      if (it == check_params().end()) fail("checks." + name, "unknown check");
      if (params.is_boolean()) {
        if (params.get<bool>()) c.checks.push_back({name, json::object()});
        continue;
      }
      std::set<std::string> allowed{"enabled"};
      for (const auto& [key, kind] : it->second) allowed.insert(key);
      require_keys(params, "checks." + name, allowed);
      if (params.contains("enabled")) {
        if (!params["enabled"].is_boolean()) fail("checks." + name + ".enabled", "expected a boolean");
        if (!params["enabled"].get<bool>()) continue;
      }
      json kept = json::object();
      for (const auto& [key, kind] : it->second) {
        if (!params.contains(key)) continue;
        check_kind(params[key], kind, "checks." + name + "." + key, c.domain.dimension);
        kept[key] = params[key];
      }
      c.checks.push_back({name, std::move(kept)});
    }
    std::sort(c.checks.begin(), c.checks.end(),
              [](const CheckConfig& x, const CheckConfig& y) { return x.name < y.name; });
  }

  GridSpec grid;
  try {
    grid = c.grid();
  } catch (const std::invalid_argument& e) {
    fail("domain", e.what());
  }
  try {
    ProblemSpec::from_expressions(grid, c.p, c.a, c.b);
  } catch (const std::exception& e) {
    // Name the field whose sampling or validation failed.
    const std::pair<const char*, const std::string*> fields[] = {{"p", &c.p}, {"a", &c.a}, {"b", &c.b}};
    for (const auto& [key, text] : fields) {
      try {
        sample_field(*text, grid, Locus::QuadraturePoints);
      } catch (const std::exception& inner) {
        fail(key, inner.what());
      }
    }
    const std::string what = e.what();
    if (what.find("exponent") != std::string::npos) fail("p", "invalid exponent (need 1 < p(x) < infinity): " + what);
    fail("a/b", what);
  }
  for (const CheckConfig& check : c.checks) check_semantics(check, grid);
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  json extents = json::array();
  for (const Interval& e : c.domain.extents) extents.push_back({e.lo, e.hi});
  j["domain"] = {{"dimension", c.domain.dimension}, {"extents", extents}, {"nodes", c.domain.nodes}};
  j["p"] = c.p;
  j["a"] = c.a;
  j["b"] = c.b;
  j["solver"] = {{"max_iterations", c.solver.max_iterations},
                 {"tolerance", c.solver.tolerance},
                 {"t_min", c.solver.t_min},
                 {"t_max", c.solver.t_max},
                 {"restarts", c.solver.restarts},
                 {"step_rule", "backtracking"},
                 {"refine", c.refine}};
  json checks = json::object();
  for (const CheckConfig& check : c.checks) checks[check.name] = check.params;
  j["checks"] = checks;
  j["output"] = c.output;
  j["seed"] = c.seed;
  return j;
}

}  // namespace pxlap::reporting
