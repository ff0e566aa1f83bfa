#include "pxlap/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "preconditioner.hpp"

namespace pxlap {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;
constexpr double kNoise = 0.02;
// Relative change in R below which two values are indistinguishable.
constexpr double kFlatR = 1e-13;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void scale(std::vector<double>& v, double t) {
  for (double& x : v) x *= t;
}

/// State shared by one ascent run.
class AscentRun {
 public:
  AscentRun(const ProblemSpec& spec, const SolverOptions& opts)
      : spec_(spec), opts_(opts), grid_(spec.grid()), precond_(grid_), jacobian_(grid_), n_(grid_.node_count()),
        grad_a_(n_), grad_b_(n_), residual_(n_), direction_(n_), trial_(n_) {}

  double rayleigh_of(std::span<const double> v) const {
    const auto e = detail::energies(spec_, v);
    return e.A > 0.0 ? e.B / e.A : 0.0;
  }

  /// Residual at lambda = A/B; returns its norm and leaves it in residual_.
  double residual_at(std::span<const double> v, double& lambda, double& rq) {
    const auto e = detail::energies(spec_, v);
    lambda = e.A / e.B;
    rq = e.B / e.A;
    detail::energy_gradients(spec_, v, grad_a_, grad_b_);
    for (std::size_t i = 0; i < n_; ++i) residual_[i] = grad_a_[i] - lambda * grad_b_[i];
    return detail::residual_norm(grid_, residual_);
  }

  /// Golden-section search of R(e^s v) over s in [log t_min, log t_max].
  /// Rescales v in place when the best point beats s = 0 beyond roundoff.
  void amplitude_search(std::vector<double>& v) {
    const double r0 = rayleigh_of(v);
    auto f = [&](double s) {
      const double t = std::exp(s);
      for (std::size_t i = 0; i < n_; ++i) trial_[i] = t * v[i];
      return rayleigh_of(trial_);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(opts_.t_min);
    double hi = std::log(opts_.t_max);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-9) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = f(x1);
      }
    }
    const double s = f1 >= f2 ? x1 : x2;
    const double best = std::max(f1, f2);
    if (best > r0 + kFlatR * std::abs(r0)) scale(v, std::exp(s));
  }

  bool at_amplitude_bound(std::span<const double> v) {
    const double r0 = rayleigh_of(v);
    for (double t : {opts_.t_min, opts_.t_max}) {
      for (std::size_t i = 0; i < n_; ++i) trial_[i] = t * v[i];
      if (rayleigh_of(trial_) > r0 * (1.0 + 1e-12)) return true;
    }
    return false;
  }

  std::vector<double> initial_guess(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n_, 0.0);
    const int dim = grid_.dimension();
    for (std::size_t i = 0; i < n_; ++i) {
      if (grid_.is_boundary(i)) continue;
      const Point x = grid_.node_coord(i);
      double bump = 1.0;
      for (int axis = 0; axis < dim; ++axis) {
        const Interval& e = grid_.extent(axis);
        bump *= std::sin(std::numbers::pi * (x[axis] - e.lo) / e.length());
      }
      v[i] = bump + kNoise * (2.0 * uniform01(rng) - 1.0);
    }
    return v;
  }

  /// One restart.  std::nullopt when no field with B > 0 could be built.
  std::optional<EigenResult> run(std::uint64_t seed) {
    std::vector<double> v = initial_guess(seed);
    if (!(detail::energies(spec_, v).B > 0.0)) {
      // Concentrate the guess where b > 0.
      const ScalarField bplus_nodes = nodal_average(spec_.coeffs().b());
      for (std::size_t i = 0; i < n_; ++i) v[i] *= std::max(bplus_nodes[i], 0.0);
      if (!(detail::energies(spec_, v).B > 0.0)) return std::nullopt;
    }

    EigenResult out;
    out.seed = seed;
    out.witness = ScalarField(grid_, Locus::Nodes, v);
    out.witness_rayleigh = rayleigh_of(v);

    const bool variable = !spec_.p().is_constant();
    if (variable) {
      amplitude_search(v);
    } else {
      scale(v, 1.0 / max_abs(v));
    }

    double lambda = 0.0;
    double rq = 0.0;
    double res = residual_at(v, lambda, rq);
    int it = 0;
    for (;; ++it) {
      out.trace.push_back({it, rq, res});
      if (res < opts_.tolerance || it >= opts_.max_iterations) break;
      // Guarded Newton step first; the preconditioned ascent step is the fallback.
      if (!newton_step(v, res) && !step(v, rq, res)) break;
      if (variable) {
        amplitude_search(v);
      } else {
        scale(v, 1.0 / max_abs(v));
      }
      res = residual_at(v, lambda, rq);
    }

    for (double& x : v) x = std::abs(x);
    res = residual_at(v, lambda, rq);
    if (out.trace.back().residual != res || out.trace.back().rayleigh != rq) out.trace.push_back({it, rq, res});

    out.lambda1 = lambda;
    out.residual_norm = res;
    out.converged = res < opts_.tolerance;
    out.iterations = it;
    out.amplitude_at_optimum = max_abs(v);
    out.amplitude_at_bound = variable && at_amplitude_bound(v);
    out.eigenfunction = ScalarField(grid_, Locus::Nodes, std::move(v));
    return out;
  }

  /// Preconditioned ascent step with backtracking on R.  Expects residual_
  /// to hold the residual at v.  Returns false when no step was accepted.
  bool step(std::vector<double>& v, double rq, double res) {
    if (!compute_direction(v)) return false;
    const auto e = detail::energies(spec_, v);
    // dR/dv = -(B / A^2) * residual
    const double slope = -(e.B / (e.A * e.A)) * dot(residual_, direction_);
    if (!(slope > 0.0)) {
      for (std::size_t i = 0; i < n_; ++i) direction_[i] = -residual_[i];
    }
    const double slope_used = -(e.B / (e.A * e.A)) * dot(residual_, direction_);

    for (double alpha = 1.0; alpha >= kMinStep; alpha *= 0.5) {
      for (std::size_t i = 0; i < n_; ++i) trial_[i] = v[i] + alpha * direction_[i];
      const double r_try = rayleigh_of(trial_);
      if (r_try >= rq + kArmijo * alpha * slope_used) {
        v.swap(trial_);
        return true;
      }
      // Near the optimum R is flat to roundoff; fall back on the residual.
      if (std::abs(r_try - rq) <= kFlatR * std::abs(rq)) {
        double lam = 0.0;
        double rq_try = 0.0;
        std::vector<double> saved = residual_;
        const double res_try = residual_at(trial_, lam, rq_try);
        if (res_try < res) {
          v.swap(trial_);
          return true;
        }
        residual_ = std::move(saved);
      }
    }
    return false;
  }

  /// Damped Newton step on the bordered eigenvalue system.  Accepts the first
  /// damping that lowers the residual without lowering R beyond roundoff.
  bool newton_step(std::vector<double>& v, double& res) {
    double lambda = 0.0;
    double rq = 0.0;
    res = residual_at(v, lambda, rq);
    const double B = detail::energies(spec_, v).B;
    if (!jacobian_.assemble(spec_, v, lambda, residual_, grad_b_, B)) return false;
    jacobian_.solve(residual_, direction_);
    const bool variable = !spec_.p().is_constant();
    const std::vector<double> saved = residual_;
    for (double omega = 1.0; omega >= 1.0 / 64.0; omega *= 0.5) {
      for (std::size_t i = 0; i < n_; ++i) trial_[i] = v[i] + omega * direction_[i];
      if (!variable) scale(trial_, 1.0 / max_abs(trial_));
      if (!(detail::energies(spec_, trial_).B > 0.0)) continue;
      double lam = 0.0;
      double rq_try = 0.0;
      const double res_try = residual_at(trial_, lam, rq_try);
      if (res_try < res && rq_try >= rq * (1.0 - 1e-12)) {
        v.swap(trial_);
        res = res_try;
        return true;
      }
    }
    residual_ = saved;
    return false;
  }

  /// direction_ = -P^{-1} residual_.
  bool compute_direction(std::span<const double> v) {
    if (!precond_.assemble(spec_, v)) return false;
    precond_.solve(residual_, direction_);
    for (double& d : direction_) d = -d;
    return true;
  }

  /// One damped Newton sweep for refine_eigenpair.  Returns the new residual
  /// norm or nothing when no damping factor reduces it.
  std::optional<double> refine_sweep(std::vector<double>& v, double res) {
    double r = res;
    if (!newton_step(v, r)) return std::nullopt;
    return r;
  }

  double residual_norm_of(std::span<const double> v) {
    double lambda = 0.0;
    double rq = 0.0;
    return residual_at(v, lambda, rq);
  }

  double lambda_of(std::span<const double> v) const {
    const auto e = detail::energies(spec_, v);
    return e.A / e.B;
  }

 private:
  const ProblemSpec& spec_;
  const SolverOptions& opts_;
  GridSpec grid_;
  detail::HessianPreconditioner precond_;
  detail::EigenJacobian jacobian_;
  std::size_t n_;
  std::vector<double> grad_a_;
  std::vector<double> grad_b_;
  std::vector<double> residual_;
  std::vector<double> direction_;
  std::vector<double> trial_;
};

bool better(const EigenResult& a, const EigenResult& b) {
  if (a.converged != b.converged) return a.converged;
  if (a.residual_norm != b.residual_norm) return a.residual_norm < b.residual_norm;
  return a.seed < b.seed;
}

}  // namespace

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  if (!(t_min > 0.0 && t_min < 1.0 && t_max > 1.0 && std::isfinite(t_max))) {
    throw std::invalid_argument("amplitude bracket must satisfy 0 < t_min < 1 < t_max");
  }
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
}

EigenResult solve_first_eigenvalue(const ProblemSpec& spec, const SolverOptions& opts) {
  opts.validate();
  AscentRun runner(spec, opts);
  std::optional<EigenResult> best;
  for (int r = 0; r < opts.restarts; ++r) {
    auto result = runner.run(opts.seed + static_cast<std::uint64_t>(r));
    if (!result) continue;
    result->restart = r;
    if (!best || better(*result, *best)) best = std::move(result);
  }
  if (!best) throw DegenerateProblemError("every restart produced B(u) <= 0; b has no usable positive part");
  return *std::move(best);
}

EigenResult refine_eigenpair(const EigenResult& result, const ProblemSpec& spec, const SolverOptions& opts) {
  opts.validate();
  const ScalarField& u = result.eigenfunction;
  if (!(u.grid() == spec.grid())) throw std::invalid_argument("eigenfunction and problem live on different grids");
  std::vector<double> v(u.values().begin(), u.values().end());
  if (!(detail::energies(spec, v).B > 0.0)) {
    throw std::invalid_argument("cannot refine an eigenpair with B(u) <= 0");
  }

  if (spec.p().is_constant()) scale(v, 1.0 / max_abs(v));

  constexpr int kMaxSweeps = 25;
  AscentRun runner(spec, opts);
  double res = runner.residual_norm_of(v);
  const double start = res;
  int accepted = 0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const auto next = runner.refine_sweep(v, res);
    if (!next) break;
    ++accepted;
    const bool stalled = *next > 0.5 * res;
    res = *next;
    if (stalled || res < 1e-3 * opts.tolerance) break;
  }

  EigenResult out = result;
  if (accepted == 0) {
    out.refinement_stalled = start >= opts.tolerance;
    return out;
  }
  for (double& x : v) x = std::abs(x);
  out.residual_norm = runner.residual_norm_of(v);
  out.lambda1 = runner.lambda_of(v);
  out.converged = out.residual_norm < opts.tolerance;
  out.amplitude_at_optimum = max_abs(v);
  out.eigenfunction = ScalarField(spec.grid(), Locus::Nodes, std::move(v));
  out.refined = true;
  out.trace.push_back({out.iterations + accepted, 1.0 / out.lambda1, out.residual_norm});
  return out;
}

}  // namespace pxlap
