#include "pxlap/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "pxlap/modular.hpp"
#include "pxlap/moser.hpp"
#include "pxlap/principles.hpp"
#include "pxlap/regularity.hpp"

#ifndef PXLAP_VERSION
#define PXLAP_VERSION "unknown"
#endif

namespace pxlap::reporting {

namespace {

using nlohmann::json;
using harness::CheckEntry;
using harness::json_number;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double param(const json& p, const char* key, double fallback) {
  return p.contains(key) ? p[key].get<double>() : fallback;
}

std::vector<double> param_list(const json& p, const char* key, std::vector<double> fallback) {
  if (!p.contains(key)) return fallback;
  return p[key].get<std::vector<double>>();
}

Point param_center(const json& p, const GridSpec& grid) {
  Point c{0.0, 0.0};
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    c[axis] = p.contains("center") ? p["center"][axis].get<double>()
                                   : 0.5 * (grid.extent(axis).lo + grid.extent(axis).hi);
  }
  return c;
}

double min_extent(const GridSpec& grid) {
  double L = grid.extent(0).length();
  if (grid.dimension() == 2) L = std::min(L, grid.extent(1).length());
  return L;
}

json point_json(const Point& x, int dim) {
  json j = json::array();
  for (int axis = 0; axis < dim; ++axis) j.push_back(x[axis]);
  return j;
}

ScalarField normalised(const ScalarField& u) {
  double sup = 0.0;
  for (double v : u.values()) sup = std::max(sup, v);
  return sup > 0.0 ? u.scaled(1.0 / sup) : u;
}

json estimate_json(const harness::ConstantEstimate& e) {
  json w = json::array();
  for (const auto& x : e.witnesses) {
    json params = json::object();
    for (const auto& [k, v] : x.params) params[k] = v;
    w.push_back({{"params", params}, {"lhs", x.lhs}, {"rhs", x.rhs}, {"ratio", json_number(x.ratio)}});
  }
  return w;
}

/// Everything a check may need; the refined-grid solve is done on demand.
class CheckContext {
 public:
  CheckContext(const RunConfig& cfg, const ProblemSpec& spec, const EigenResult& result)
      : cfg_(cfg), spec_(spec), result_(result), unit_(normalised(result.eigenfunction)) {}

  const RunConfig& config() const { return cfg_; }
  const ProblemSpec& spec() const { return spec_; }
  const GridSpec& grid() const { return spec_.grid(); }
  const EigenResult& result() const { return result_; }
  /// Eigenfunction scaled to sup = 1.
  const ScalarField& unit() const { return unit_; }

  const ProblemSpec& fine_spec() {
    ensure_fine();
    return *fine_spec_;
  }
  const EigenResult& fine_result() {
    ensure_fine();
    return *fine_result_;
  }
  const ScalarField& fine_unit() {
    ensure_fine();
    return *fine_unit_;
  }

 private:
  void ensure_fine() {
    if (fine_result_) return;
    std::vector<int> nodes;
    for (int n : cfg_.domain.nodes) nodes.push_back(2 * (n - 1) + 1);
    const GridSpec fine = build_grid(cfg_.domain.dimension, cfg_.domain.extents, nodes);
    fine_spec_ = ProblemSpec::from_expressions(fine, cfg_.p, cfg_.a, cfg_.b);
    fine_result_ = solve_first_eigenvalue(*fine_spec_, cfg_.solver);
    if (cfg_.refine) fine_result_ = refine_eigenpair(*fine_result_, *fine_spec_, cfg_.solver);
    fine_unit_ = normalised(fine_result_->eigenfunction);
  }

  const RunConfig& cfg_;
  const ProblemSpec& spec_;
  const EigenResult& result_;
  ScalarField unit_;
  std::optional<ProblemSpec> fine_spec_;
  std::optional<EigenResult> fine_result_;
  std::optional<ScalarField> fine_unit_;
};

CheckEntry check_eigenvalue_identity(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const double tol = param(p, "tolerance", 1e-6);
  const EnergyBreakdown b = energy_breakdown(ctx.result().eigenfunction, ctx.result().lambda1, ctx.spec());
  e.measured = {{"J", b.J}, {"A", b.A}, {"B", b.B}, {"ratio", std::abs(b.J) / b.A}, {"tolerance", tol}};
  e.passed = std::abs(b.J) <= tol * b.A;
  e.table.columns = {"lambda1", "A", "B", "J"};
  e.table.rows.push_back({ctx.result().lambda1, b.A, b.B, b.J});
  return e;
}

CheckEntry check_nonexistence(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const double tol = param(p, "tolerance", 1e-10);
  const std::vector<double> factors = param_list(p, "factors", {1.1, 0.9});
  e.passed = true;
  e.table.columns = {"factor", "lambda", "J", "identity", "relative_error"};
  json rows = json::array();
  double worst = 0.0;
  for (double f : factors) {
    const auto c = harness::nonexistence_check(ctx.result(), f * ctx.result().lambda1, ctx.spec());
    const bool ok = c.verdict && c.relative_error <= tol;
    e.passed = e.passed && ok;
    worst = std::max(worst, c.relative_error);
    e.table.rows.push_back({f, c.lambda, c.J, c.identity, c.relative_error});
    rows.push_back({{"factor", f}, {"lambda", c.lambda}, {"J", c.J}, {"identity", c.identity},
                    {"relative_error", c.relative_error}, {"verdict", c.verdict}});
  }
  e.measured = {{"worst_relative_error", worst}, {"tolerance", tol}};
  e.witness["cases"] = rows;
  return e;
}

CheckEntry check_bounds(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const int samples = p.contains("samples") ? p["samples"].get<int>() : 64;
  const auto seed = p.contains("seed") ? p["seed"].get<std::uint64_t>() : ctx.config().seed;
  const ScalarField extra[] = {ctx.result().eigenfunction};
  const auto est = poincare_constant_estimate(ctx.grid(), ctx.spec().p(), samples, seed, extra);
  const double bmax = ctx.spec().coeffs().b_sup();
  const double lower = 1.0 / (est.constant * bmax);
  const double upper = 1.0 / ctx.result().witness_rayleigh;
  const double lambda = ctx.result().lambda1;
  e.passed = lower <= lambda && lambda <= upper * (1.0 + 1e-12);
  e.measured = {{"poincare_constant", est.constant},
                {"max_b", bmax},
                {"lower_bound", lower},
                {"upper_bound", upper},
                {"lambda1", lambda},
                {"witness_rayleigh", ctx.result().witness_rayleigh}};
  e.witness = {{"samples", samples}, {"seed", seed}, {"skipped", est.skipped}};
  e.table.columns = {"sample", "ratio"};
  for (std::size_t i = 0; i < est.ratios.size(); ++i) e.table.rows.push_back({double(i), est.ratios[i]});
  return e;
}

CheckEntry check_simplicity(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const auto offset = p.contains("seed_offset") ? p["seed_offset"].get<std::uint64_t>() : 1000;
  const double threshold = param(p, "threshold", 1e-6);
  SolverOptions opts = ctx.config().solver;
  opts.seed = ctx.result().seed + offset;
  EigenResult second = solve_first_eigenvalue(ctx.spec(), opts);
  if (ctx.config().refine) second = refine_eigenpair(second, ctx.spec(), opts);
  e.measured = {{"lambda1_first", ctx.result().lambda1}, {"lambda1_second", second.lambda1}, {"threshold", threshold}};
  e.witness = {{"seeds", {ctx.result().seed, second.seed}}, {"second_residual", second.residual_norm}};
  e.table.columns = {"seed", "lambda1", "residual", "converged"};
  e.table.rows.push_back({double(ctx.result().seed), ctx.result().lambda1, ctx.result().residual_norm, 1.0});
  e.table.rows.push_back({double(second.seed), second.lambda1, second.residual_norm, second.converged ? 1.0 : 0.0});
  if (!second.converged) {
    e.note = "second run did not converge";
    return e;
  }
  const double c = harness::simplicity_check(ctx.result(), second);
  e.measured["collinearity"] = c;
  e.passed = c > 1.0 - threshold;
  return e;
}

CheckEntry check_caccioppoli(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const double scale = std::min(1.0, min_extent(ctx.grid()));
  const Point center = param_center(p, ctx.grid());
  const std::vector<double> levels = param_list(p, "levels", {0.25, 0.5, 0.75});
  std::vector<harness::RadiusTriple> radii;
  if (p.contains("radii")) {
    for (const auto& t : p["radii"]) radii.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
  } else {
    radii = {{0.1 * scale, 0.2 * scale, 0.3 * scale}, {0.15 * scale, 0.25 * scale, 0.4 * scale}};
  }
  const double factor = param(p, "factor", 4.0);
  auto coarse = harness::caccioppoli_constant(ctx.unit(), ctx.spec(), center, levels, radii);
  const auto fine = harness::caccioppoli_constant(ctx.fine_unit(), ctx.fine_spec(), center, levels, radii);
  harness::compare_resolutions(coarse, fine, factor);
  e.passed = coarse.finite() && fine.finite() && coarse.stable_across_resolutions;
  e.measured = {{"estimated_c", coarse.estimated_c},
                {"estimated_c_fine", fine.estimated_c},
                {"resolution_ratio", coarse.resolution_ratio},
                {"factor", factor}};
  e.witness = {{"center", point_json(center, ctx.grid().dimension())}, {"witnesses", estimate_json(coarse)}};
  e.table.columns = {"k", "s", "t", "R", "lhs", "rhs", "ratio", "ratio_fine"};
  for (std::size_t i = 0; i < coarse.witnesses.size(); ++i) {
    const auto& w = coarse.witnesses[i];
    e.table.rows.push_back({w.params.at("k"), w.params.at("s"), w.params.at("t"), w.params.at("R"), w.lhs, w.rhs,
                            w.ratio, fine.witnesses[i].ratio});
  }
  return e;
}

CheckEntry check_harnack(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const Point center = param_center(p, ctx.grid());
  const double R = param(p, "R", 0.25 * min_extent(ctx.grid()));
  const double factor = param(p, "factor", 4.0);
  auto coarse = harness::harnack_bound_check(ctx.unit(), ctx.spec(), center, R);
  const auto fine = harness::harnack_bound_check(ctx.fine_unit(), ctx.fine_spec(), center, R);
  harness::compare_resolutions(coarse.estimate, fine.estimate, factor);
  e.passed = coarse.estimate.finite() && fine.estimate.finite() && coarse.estimate.stable_across_resolutions;
  e.measured = {{"beta", coarse.beta},
                {"lhs", coarse.lhs},
                {"bracket", coarse.bracket},
                {"estimated_c", coarse.estimate.estimated_c},
                {"estimated_c_fine", fine.estimate.estimated_c},
                {"resolution_ratio", coarse.estimate.resolution_ratio},
                {"factor", factor}};
  e.witness = {{"center", point_json(center, ctx.grid().dimension())}, {"R", R}};
  e.table.columns = {"R", "lhs", "bracket", "ratio", "ratio_fine"};
  e.table.rows.push_back({R, coarse.lhs, coarse.bracket, coarse.estimate.estimated_c, fine.estimate.estimated_c});
  return e;
}

CheckEntry check_oscillation(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const Point center = param_center(p, ctx.grid());
  const double L = min_extent(ctx.grid());
  const std::vector<double> radii = param_list(p, "radii", {L / 4, L / 8, L / 16, L / 32});
  const double holder = ctx.spec().p().p_minus() / ctx.spec().p().p_plus();
  const double min_exponent = param(p, "min_exponent", 0.9 * holder);
  const double factor = param(p, "factor", 4.0);
  auto coarse = harness::oscillation_profile(ctx.unit(), center, radii, holder);
  const auto fine = harness::oscillation_profile(ctx.fine_unit(), center, radii, holder);
  harness::compare_resolutions(coarse.estimate, fine.estimate, factor);
  const bool exponent_ok = !coarse.exponent_fitted || coarse.fitted_exponent >= min_exponent;
  e.passed = coarse.estimate.finite() && fine.estimate.finite() && coarse.estimate.stable_across_resolutions &&
             exponent_ok;
  e.measured = {{"holder_exponent", holder},
                {"estimated_c", coarse.estimate.estimated_c},
                {"estimated_c_fine", fine.estimate.estimated_c},
                {"resolution_ratio", coarse.estimate.resolution_ratio},
                {"min_exponent", min_exponent},
                {"factor", factor}};
  if (coarse.exponent_fitted) e.measured["fitted_exponent"] = coarse.fitted_exponent;
  e.witness = {{"center", point_json(center, ctx.grid().dimension())},
               {"radii", coarse.radii},
               {"oscillations", coarse.oscillations},
               {"bounds", coarse.bounds},
               {"exponent_fitted", coarse.exponent_fitted}};
  e.table.columns = {"R", "osc", "bound"};
  for (std::size_t i = 0; i < coarse.radii.size(); ++i) {
    e.table.rows.push_back({coarse.radii[i], coarse.oscillations[i], coarse.bounds[i]});
  }
  return e;
}

CheckEntry check_hopf(CheckContext& ctx, const json& p) {
  CheckEntry e;
  harness::HopfOptions opts;
  if (p.contains("margin")) opts.margin = p["margin"].get<double>();
  const auto v = harness::hopf_boundary_check(ctx.result().eigenfunction, opts);
  e.passed = v.holds;
  e.note = v.note;
  e.measured = {{"worst_violation", v.worst_violation}};
  const int dim = ctx.grid().dimension();
  e.witness = {{"location", point_json(v.location, dim)}};
  e.table.columns = dim == 1 ? std::vector<std::string>{"x", "derivative"}
                             : std::vector<std::string>{"x", "y", "derivative"};
  for (const auto& d : harness::outer_normal_derivatives(ctx.unit())) {
    const Point x = ctx.grid().node_coord(d.node);
    if (dim == 1) {
      e.table.rows.push_back({x[0], d.derivative});
    } else {
      e.table.rows.push_back({x[0], x[1], d.derivative});
    }
  }
  return e;
}

CheckEntry check_comparison(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const std::string f1 = p.contains("f1") ? p["f1"].get<std::string>() : "1";
  const std::string f2 = p.contains("f2") ? p["f2"].get<std::string>() : "2";
  const double tol = param(p, "tolerance", 1e-6);
  const Expression pexpr = Expression::parse(ctx.config().p);
  const harness::MonotoneMap F{"|u|^(p(x)-2)u", [pexpr](const Point& x, double u) {
                                 const double px = pexpr.evaluate(x[0], x[1]);
                                 return u == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(u), px - 1.0), u);
                               }};
  const auto s1 = harness::solve_monotone_problem(ctx.spec(), F, sample_field(f1, ctx.grid(), Locus::Nodes));
  const auto s2 = harness::solve_monotone_problem(ctx.spec(), F, sample_field(f2, ctx.grid(), Locus::Nodes));
  const auto v = harness::comparison_check(s1.u, s2.u, F, ctx.spec(), tol);
  e.applicable = v.applicable;
  e.passed = v.holds && s1.converged && s2.converged;
  e.note = v.note;
  if (!s1.converged || !s2.converged) e.note = "auxiliary solve did not converge";
  e.measured = {{"worst_violation", v.worst_violation},
                {"tolerance", tol},
                {"residual_1", s1.residual},
                {"residual_2", s2.residual}};
  const int dim = ctx.grid().dimension();
  e.witness = {{"F", F.name}, {"f1", f1}, {"f2", f2}, {"location", point_json(v.location, dim)}};
  e.table.columns = dim == 1 ? std::vector<std::string>{"x", "u1", "u2"}
                             : std::vector<std::string>{"x", "y", "u1", "u2"};
  for (std::size_t n = 0; n < ctx.grid().node_count(); ++n) {
    const Point x = ctx.grid().node_coord(n);
    if (dim == 1) {
      e.table.rows.push_back({x[0], s1.u[n], s2.u[n]});
    } else {
      e.table.rows.push_back({x[0], x[1], s1.u[n], s2.u[n]});
    }
  }
  return e;
}

CheckEntry check_sobolev_poincare(CheckContext& ctx, const json& p) {
  CheckEntry e;
  const Point center = param_center(p, ctx.grid());
  const double R = param(p, "R", 0.4 * min_extent(ctx.grid()));
  const double gamma = param(p, "gamma", 1.0);
  const ScalarField& u = ctx.unit();
  std::vector<double> sq(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
  const std::vector<ScalarField> witnesses = {u, ScalarField(ctx.grid(), Locus::Nodes, sq),
                                              ScalarField::constant(ctx.grid(), 1.0)};
  const auto c = harness::sp_inequality_check(witnesses, ctx.spec().p(), center, R, gamma);
  e.passed = c.holds && std::isfinite(c.c) && std::isfinite(c.chi);
  e.measured = {{"c", c.c}, {"chi", c.chi}, {"gamma", gamma}, {"R", R}};
  json rows = json::array();
  e.table.columns = {"witness", "lhs", "gradient_term", "support_term"};
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    const auto& w = c.witnesses[i];
    rows.push_back({{"lhs", w.lhs}, {"gradient_term", w.gradient_term}, {"support_term", w.support_term}});
    e.table.rows.push_back({double(i), w.lhs, w.gradient_term, w.support_term});
  }
  e.witness = {{"center", point_json(center, 2)}, {"witnesses", rows}, {"family", {"u", "u^2", "1"}}};
  return e;
}

CheckEntry check_moser(CheckContext&, const json& p) {
  CheckEntry e;
  harness::MoserParams mp;
  mp.C = param(p, "C", 1.0);
  mp.B = param(p, "B", 2.0);
  mp.beta = param(p, "beta", 1.0);
  mp.x0 = param(p, "x0", mp.threshold());
  if (p.contains("iterations")) mp.iterations = p["iterations"].get<int>();
  const auto out = harness::moser_limit_check(mp);
  e.passed = out.verdict;
  e.measured = {{"threshold", mp.threshold()}, {"x0", mp.x0}, {"final", out.sequence.back()}};
  e.witness = {{"C", mp.C}, {"B", mp.B}, {"beta", mp.beta}, {"iterations", mp.iterations},
               {"seed_condition", out.seed_condition}, {"overflow", out.overflow}};
  e.table.columns = {"i", "x"};
  for (std::size_t i = 0; i < out.sequence.size(); ++i) e.table.rows.push_back({double(i), out.sequence[i]});
  return e;
}

using CheckFn = std::function<CheckEntry(CheckContext&, const json&)>;

const std::map<std::string, CheckFn>& check_table() {
  static const std::map<std::string, CheckFn> table = {
      {"bounds", check_bounds},
      {"caccioppoli", check_caccioppoli},
      {"comparison", check_comparison},
      {"eigenvalue_identity", check_eigenvalue_identity},
      {"harnack", check_harnack},
      {"hopf", check_hopf},
      {"moser", check_moser},
      {"nonexistence", check_nonexistence},
      {"oscillation", check_oscillation},
      {"simplicity", check_simplicity},
      {"sobolev_poincare", check_sobolev_poincare},
  };
  return table;
}

json solver_json(const EigenResult& r) {
  return {{"lambda1", r.lambda1},
          {"residual_norm", r.residual_norm},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"amplitude_at_optimum", r.amplitude_at_optimum},
          {"amplitude_at_bound", r.amplitude_at_bound},
          {"seed", r.seed},
          {"restart", r.restart},
          {"witness_rayleigh", r.witness_rayleigh},
          {"refined", r.refined},
          {"refinement_stalled", r.refinement_stalled}};
}

json eigenfunction_json(const ScalarField& u) {
  const GridSpec& g = u.grid();
  json x = json::array();
  json y = json::array();
  json v = json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Point p = g.node_coord(i);
    x.push_back(p[0]);
    if (g.dimension() == 2) y.push_back(p[1]);
    v.push_back(u[i]);
  }
  json j = {{"dimension", g.dimension()}, {"x", x}, {"values", v}};
  if (g.dimension() == 2) j["y"] = y;
  return j;
}

json trace_json(const std::vector<TraceEntry>& trace) {
  json t = json::array();
  for (const TraceEntry& e : trace) t.push_back({e.iteration, e.rayleigh, e.residual});
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

json without_timing(const json& report) {
  json copy = report;
  copy.erase("timing");
  return copy;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

RunOutcome run_config(const RunConfig& cfg, const RunOptions& opts) {
  const auto t_start = Clock::now();
  const std::string started_at = utc_timestamp();
  RunConfig config = cfg;
  if (opts.seed) {
    config.seed = *opts.seed;
    config.solver.seed = *opts.seed;
  }
  if (opts.out) config.output = opts.out->string();
  if (!opts.run_checks) config.checks.clear();

  RunOutcome outcome;
  outcome.out_dir = config.output;
  std::filesystem::create_directories(outcome.out_dir);

  const ProblemSpec spec = config.problem();
  const ExponentField& p = spec.p();

  const auto t_solve = Clock::now();
  EigenResult result = solve_first_eigenvalue(spec, config.solver);
  if (config.refine) result = refine_eigenpair(result, spec, config.solver);
  const double solve_seconds = seconds_since(t_solve);
  if (opts.log) {
    *opts.log << "solve: lambda1 = " << result.lambda1 << ", residual = " << result.residual_norm
              << ", iterations = " << result.iterations << (result.converged ? "" : " (not converged)") << '\n';
  }

  json report;
  report["artifact"] = {{"name", "pxlap"}, {"version", PXLAP_VERSION}};
  report["config"] = to_json(config);
  report["exponent"] = {{"p_minus", p.p_minus()},
                        {"p_plus", p.p_plus()},
                        {"lipschitz_estimate", p.lipschitz_estimate()},
                        {"max_jump", p.max_jump()},
                        {"lipschitz_flagged", p.lipschitz_flagged()}};
  report["solver"] = solver_json(result);
  const EnergyBreakdown energy = energy_breakdown(result.eigenfunction, result.lambda1, spec);
  report["energy"] = {{"A", energy.A}, {"B", energy.B}, {"R", energy.R}, {"J", energy.J}, {"lambda", energy.lambda}};
  report["eigenfunction"] = eigenfunction_json(result.eigenfunction);
  report["trace"] = trace_json(result.trace);

  double checks_seconds = 0.0;
  if (!result.converged) {
    outcome.exit_code = kExitConvergenceFailure;
  } else if (!config.checks.empty()) {
    const auto t_checks = Clock::now();
    CheckContext ctx(config, spec, result);
    for (const CheckConfig& c : config.checks) {
      CheckEntry entry;
      try {
        entry = check_table().at(c.name)(ctx, c.params);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("checks." + c.name + ": " + e.what());
      }
      entry.name = c.name;
      if (opts.log) *opts.log << "check " << c.name << ": " << (entry.ok() ? "pass" : "FAIL") << '\n';
      outcome.checks.add(std::move(entry));
    }
    checks_seconds = seconds_since(t_checks);
    report["checks"] = outcome.checks.to_json();
    if (!outcome.checks.all_passed()) outcome.exit_code = kExitCheckFailure;
  }

  report["timing"] = {{"started_at", started_at},
                      {"solve_seconds", solve_seconds},
                      {"checks_seconds", checks_seconds},
                      {"total_seconds", seconds_since(t_start)}};

  const auto report_path = outcome.out_dir / "report.json";
  write_text(report_path, dump_report(report));
  outcome.files.push_back(report_path);

  {
    const auto path = outcome.out_dir / "eigenfunction.csv";
    std::ofstream out(path, std::ios::binary);
    write_csv(out, result.eigenfunction);
    outcome.files.push_back(path);
  }
  {
    harness::WitnessTable t;
    t.columns = {"iteration", "rayleigh", "residual"};
    for (const TraceEntry& e : result.trace) t.rows.push_back({double(e.iteration), e.rayleigh, e.residual});
    const auto path = outcome.out_dir / "trace.csv";
    std::ofstream out(path, std::ios::binary);
    harness::write_csv(out, t);
    outcome.files.push_back(path);
  }
  for (const CheckEntry& e : outcome.checks.entries()) {
    if (e.table.columns.empty()) continue;
    const auto path = outcome.out_dir / ("check_" + e.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    harness::write_csv(out, e.table);
    outcome.files.push_back(path);
  }
  outcome.report = std::move(report);
  return outcome;
}

int run_config_file(const std::filesystem::path& path, const RunOptions& opts, std::ostream& err) {
  try {
    const RunConfig config = load_run_config(path);
    return run_config(config, opts).exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DegenerateProblemError& e) {
    err << "solver: " << e.what() << '\n';
    return kExitConvergenceFailure;
  }
}

}  // namespace pxlap::reporting
