#include <benchmark/benchmark.h>

#include "pxlap/eigen_solver.hpp"
#include "pxlap/modular.hpp"

using namespace pxlap;

namespace {

ProblemSpec spec_1d(int n, const char* p) { return ProblemSpec::from_expressions(build_grid_1d({0, 1}, n), p, "0", "1"); }

ProblemSpec spec_2d(int n, const char* p) {
  return ProblemSpec::from_expressions(build_grid_2d({0, 1}, {0, 1}, n, n), p, "0", "1");
}

void BM_Energy1D(benchmark::State& state) {
  const ProblemSpec spec = spec_1d(static_cast<int>(state.range(0)), "2+x");
  const ScalarField u = sample_field("sin(pi*x)", spec.grid(), Locus::Nodes);
  for (auto _ : state) benchmark::DoNotOptimize(energy_breakdown(u, 20.0, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Energy1D)->Arg(512)->Arg(4096)->Arg(32768);

void BM_Residual2D(benchmark::State& state) {
  const ProblemSpec spec = spec_2d(static_cast<int>(state.range(0)), "2 + x*y");
  const ScalarField u = sample_field("sin(pi*x)*sin(pi*y)", spec.grid(), Locus::Nodes);
  for (auto _ : state) benchmark::DoNotOptimize(weak_residual(u, 40.0, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Residual2D)->Arg(33)->Arg(65)->Arg(129);

void BM_Luxemburg(benchmark::State& state) {
  const ProblemSpec spec = spec_2d(static_cast<int>(state.range(0)), "1.5 + x*y");
  const ScalarField u = sample_field("sin(pi*x)*sin(pi*y)", spec.grid(), Locus::Nodes);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(u, spec.p()));
}
BENCHMARK(BM_Luxemburg)->Arg(33)->Arg(129);

void BM_Solve1D(benchmark::State& state) {
  const ProblemSpec spec = spec_1d(static_cast<int>(state.range(0)), "2+x");
  SolverOptions opts;
  opts.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_first_eigenvalue(spec, opts));
}
BENCHMARK(BM_Solve1D)->Arg(257)->Arg(1025)->Unit(benchmark::kMillisecond);

void BM_Solve2D(benchmark::State& state) {
  const ProblemSpec spec = spec_2d(static_cast<int>(state.range(0)), "2");
  SolverOptions opts;
  opts.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_first_eigenvalue(spec, opts));
}
BENCHMARK(BM_Solve2D)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
