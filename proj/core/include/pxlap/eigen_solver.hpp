#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pxlap/energy.hpp"

namespace pxlap {

/// Raised when no restart produces a field with B(u) > 0.
class DegenerateProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StepRule { Backtracking };

struct SolverOptions {
  int max_iterations = 5000;
  double tolerance = 1e-8;  ///< weak residual norm at which a run counts as converged
  StepRule step_rule = StepRule::Backtracking;
  double t_min = 1e-3;  ///< amplitude search bracket, relative to the current iterate
  double t_max = 1e3;
  int restarts = 3;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument unless tolerance > 0, t_min < 1 < t_max,
  /// restarts >= 1 and max_iterations >= 1.
  void validate() const;
};

struct TraceEntry {
  int iteration = 0;
  double rayleigh = 0.0;
  double residual = 0.0;
};

/// First eigenpair: lambda1 = A(u1) / B(u1) for the reported u1 >= 0.
struct EigenResult {
  double lambda1 = 0.0;
  ScalarField eigenfunction;
  double residual_norm = 0.0;
  int iterations = 0;
  double amplitude_at_optimum = 0.0;  ///< max |u1|
  bool amplitude_at_bound = false;    ///< amplitude search ended on t_min or t_max
  bool converged = false;
  std::vector<TraceEntry> trace;
  std::uint64_t seed = 0;  ///< seed of the winning restart
  int restart = 0;

  /// First iterate with B > 0; 1 / R(witness) bounds lambda1 from above.
  ScalarField witness;
  double witness_rayleigh = 0.0;

  bool refined = false;
  bool refinement_stalled = false;
};

/// Maximises R(v) = B(v)/A(v) over fields vanishing on the boundary.
///
/// Each restart starts from a product-of-sines bump plus seeded noise and
/// iterates: Hessian-preconditioned steepest ascent direction of R (built from
/// the weak residual at lambda = A/B), backtracking on R, then (for
/// non-constant p) a golden-section search of R(t v) over log t in
/// [log t_min, log t_max].  Constant-p iterates are normalised to max |v| = 1
/// instead, since R is scale invariant there.  A run stops once the weak
/// residual drops below the tolerance.  The reported eigenfunction is |v|.
/// Among restarts the converged one with the smallest residual wins, ties
/// going to the lowest seed.  A run that does not converge is returned with
/// converged = false and its trace.
EigenResult solve_first_eigenvalue(const ProblemSpec& spec, const SolverOptions& opts);

/// Polishes a solution: damped Newton-like sweeps on the weak residual with
/// lambda frozen at A/B, each accepted only if the residual does not grow.
/// Throws std::invalid_argument when B(u) <= 0 (e.g. u = 0).  If no sweep is
/// accepted on an unconverged input, the input comes back unchanged with
/// refinement_stalled set.
EigenResult refine_eigenpair(const EigenResult& result, const ProblemSpec& spec, const SolverOptions& opts);

}  // namespace pxlap
