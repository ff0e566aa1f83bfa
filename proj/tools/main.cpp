#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "pxlap/plot_data.hpp"
#include "pxlap/run.hpp"
#include "pxlap/shooting.hpp"

namespace fs = std::filesystem;
using namespace pxlap::reporting;

namespace {

struct Common {
  std::string out;
  std::int64_t seed = -1;
  bool quiet = false;

  RunOptions options(bool run_checks) const {
    RunOptions o;
    if (!out.empty()) o.out = out;
    if (seed >= 0) o.seed = static_cast<std::uint64_t>(seed);
    o.run_checks = run_checks;
    o.log = quiet ? nullptr : &std::cout;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "output directory (overrides the config)");
  cmd->add_option("--seed", c.seed, "random seed (overrides the config)")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--quiet", c.quiet, "no progress output");
}

int run(const std::string& config, const Common& c, bool run_checks) {
  const int code = run_config_file(config, c.options(run_checks), std::cerr);
  if (!c.quiet) {
    switch (code) {
      case kExitPass: std::cout << (run_checks ? "all checks passed\n" : "converged\n"); break;
      case kExitConvergenceFailure: std::cout << "solver did not converge\n"; break;
      case kExitCheckFailure: std::cout << "some checks failed\n"; break;
      default: break;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pxlap: first Dirichlet eigenpair of the p(x)-Laplacian and property checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PXLAP_CLI_VERSION));

  Common solve_opts, check_opts, plot_opts;
  std::string solve_config, check_config, report_path, kind;
  double oracle_p = 0.0, oracle_length = 1.0;
  bool oracle_quiet = false;

  auto* solve = app.add_subcommand("solve", "solve only; the report has no checks section");
  solve->add_option("config", solve_config, "run configuration (JSON)")->required();
  add_common(solve, solve_opts);

  auto* check = app.add_subcommand("check", "solve and run every enabled check");
  check->add_option("config", check_config, "run configuration (JSON)")->required();
  add_common(check, check_opts);

  auto* oracle = app.add_subcommand("oracle", "constant-p shooting value of lambda1 on (0, length)");
  oracle->add_option("--p", oracle_p, "constant exponent > 1")->required();
  oracle->add_option("--length", oracle_length, "interval length > 0")->required();
  oracle->add_flag("--quiet", oracle_quiet, "print the bare number");

  auto* plot = app.add_subcommand("plot", "CSV plot data from a report.json");
  plot->add_option("report", report_path, "report.json")->required()->check(CLI::ExistingFile);
  plot->add_option("--kind", kind, "eigenfunction, trace or oscillation")
      ->required()
      ->check(CLI::IsMember(plot_kinds()));
  add_common(plot, plot_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  if (*solve) return run(solve_config, solve_opts, false);
  if (*check) return run(check_config, check_opts, true);

  if (*oracle) {
    try {
      const double lambda = pxlap::constant_p_oracle(oracle_p, oracle_length);
      std::cout << std::setprecision(15);
      if (oracle_quiet) {
        std::cout << lambda << '\n';
      } else {
        std::cout << "lambda1(p=" << oracle_p << ", length=" << oracle_length << ") = " << lambda << '\n';
      }
      return kExitPass;
    } catch (const std::invalid_argument& e) {
      std::cerr << "oracle: " << e.what() << '\n';
      return kExitConfigError;
    } catch (const std::runtime_error& e) {
      std::cerr << "oracle: " << e.what() << '\n';
      return kExitConvergenceFailure;
    }
  }

  // plot
  try {
    if (plot_opts.out.empty()) {
      emit_plot_data(fs::path(report_path), kind, std::cout);
    } else {
      fs::create_directories(plot_opts.out);
      const fs::path target = fs::path(plot_opts.out) / ("plot_" + kind + ".csv");
      std::ofstream os(target, std::ios::binary);
      emit_plot_data(fs::path(report_path), kind, os);
      if (!plot_opts.quiet) std::cout << "wrote " << target.string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "plot: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitPass;
}
