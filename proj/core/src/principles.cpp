#include "pxlap/principles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "preconditioner.hpp"

namespace pxlap::harness {

namespace {

// Same exponent, a = 0: only the gradient part of energy_gradients survives.
ProblemSpec gradient_only(const ProblemSpec& spec) {
  return ProblemSpec(spec.p(), make_coefficients(ScalarField::constant(spec.grid(), 0.0, Locus::QuadraturePoints),
                                                 spec.coeffs().b()));
}

std::vector<double> operator_values(const ProblemSpec& grad_spec, std::span<const double> u,
                                    const std::vector<double>& w, const MonotoneMap& F) {
  const GridSpec& g = grad_spec.grid();
  std::vector<double> ga(g.node_count());
  std::vector<double> gb(g.node_count());
  detail::energy_gradients(grad_spec, u, ga, gb);
  for (std::size_t n = 0; n < ga.size(); ++n) {
    if (!g.is_boundary(n)) ga[n] += w[n] * F(g.node_coord(n), u[n]);
  }
  return ga;
}

double max_abs_interior(const GridSpec& g, std::span<const double> v) {
  double m = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (!g.is_boundary(n)) m = std::max(m, std::abs(v[n]));
  }
  return m;
}

}  // namespace

MonotoneMap monotone_identity() {
  return {"u", [](const Point&, double u) { return u; }};
}

MonotoneMap monotone_power(double p0) {
  if (!(p0 > 1.0)) throw std::invalid_argument("monotone power needs an exponent above 1");
  return {"|u|^(p-2)u", [p0](const Point&, double u) {
            return u == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(u), p0 - 1.0), u);
          }};
}

std::vector<double> lumped_weights(const GridSpec& grid) {
  std::vector<double> w(grid.node_count(), 0.0);
  const double share = grid.cell_volume() / grid.corners_per_cell();
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const auto k = grid.cell_corners(c);
    for (int q = 0; q < grid.corners_per_cell(); ++q) w[k[q]] += share;
  }
  return w;
}

ScalarField comparison_operator(const ScalarField& u, const ProblemSpec& spec, const MonotoneMap& F) {
  if (!(u.grid() == spec.grid()) || u.locus() != Locus::Nodes) {
    throw std::invalid_argument("comparison operator expects a node field on the problem grid");
  }
  return ScalarField(spec.grid(), Locus::Nodes,
                     operator_values(gradient_only(spec), u.values(), lumped_weights(spec.grid()), F));
}

MonotoneSolve solve_monotone_problem(const ProblemSpec& spec, const MonotoneMap& F, const ScalarField& forcing,
                                     const MonotoneSolveOptions& opts) {
  const GridSpec& g = spec.grid();
  if (!(forcing.grid() == g) || forcing.locus() != Locus::Nodes) {
    throw std::invalid_argument("forcing must be a node field on the problem grid");
  }
  const ProblemSpec gs = gradient_only(spec);
  const std::vector<double> w = lumped_weights(g);
  const std::size_t nn = g.node_count();
  std::vector<double> rhs(nn, 0.0);
  for (std::size_t n = 0; n < nn; ++n) {
    if (!g.is_boundary(n)) rhs[n] = w[n] * forcing[n];
  }
  const double scale = std::max(max_abs_interior(g, rhs), std::numeric_limits<double>::min());

  auto residual_of = [&](std::span<const double> u) {
    std::vector<double> r = operator_values(gs, u, w, F);
    for (std::size_t n = 0; n < nn; ++n) r[n] = g.is_boundary(n) ? 0.0 : r[n] - rhs[n];
    return r;
  };

  MonotoneSolve out;
  std::vector<double> u(nn, 0.0);
  std::vector<double> r = residual_of(u);
  double res = max_abs_interior(g, r) / scale;
  detail::HessianPreconditioner P(g);
  std::vector<double> diag(nn, 0.0);
  std::vector<double> d(nn, 0.0);
  std::vector<double> trial(nn, 0.0);

  // For p != 2 the Hessian at u = 0 is degenerate and the first step blows
  // up, so start from the p = 2 solution when it is better than zero.
  {
    const ProblemSpec quadratic(validate_exponent(ScalarField::constant(g, 2.0, Locus::QuadraturePoints)),
                                gs.coeffs());
    if (P.assemble(quadratic, u)) {
      P.solve(r, d);
      for (std::size_t n = 0; n < nn; ++n) trial[n] = -d[n];
      std::vector<double> rt = residual_of(trial);
      const double rest = max_abs_interior(g, rt) / scale;
      if (rest < res) {
        u.swap(trial);
        r.swap(rt);
        res = rest;
      }
    }
  }

  while (res > opts.tolerance && out.iterations < opts.max_iterations) {
    ++out.iterations;
    for (std::size_t n = 0; n < nn; ++n) {
      if (g.is_boundary(n)) continue;
      const Point x = g.node_coord(n);
      const double eps = 1e-6 * std::max(1.0, std::abs(u[n]));
      diag[n] = w[n] * std::max(0.0, (F(x, u[n] + eps) - F(x, u[n] - eps)) / (2.0 * eps));
    }
    if (!P.assemble(gs, u, diag)) break;
    P.solve(r, d);
    bool accepted = false;
    for (double t = 1.0; t > 1e-10; t *= 0.5) {
      for (std::size_t n = 0; n < nn; ++n) trial[n] = u[n] - t * d[n];
      std::vector<double> rt = residual_of(trial);
      const double rest = max_abs_interior(g, rt) / scale;
      if (rest < res) {
        u.swap(trial);
        r.swap(rt);
        res = rest;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.residual = res;
  out.converged = res <= opts.tolerance;
  out.u = ScalarField(g, Locus::Nodes, std::move(u));
  return out;
}

PrincipleVerdict comparison_check(const ScalarField& u1, const ScalarField& u2, const MonotoneMap& F,
                                  const ProblemSpec& spec, double tolerance) {
  const GridSpec& g = spec.grid();
  if (!(u1.grid() == g) || !(u2.grid() == g)) throw std::invalid_argument("comparison fields live on other grids");
  PrincipleVerdict v;

  // Spot check of monotonicity over the value range of both fields.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    lo = std::min({lo, u1[n], u2[n]});
    hi = std::max({hi, u1[n], u2[n]});
  }
  lo -= 1.0;
  hi += 1.0;
  const std::size_t stride = std::max<std::size_t>(1, g.node_count() / 16);
  for (std::size_t n = 0; n < g.node_count() && v.applicable; n += stride) {
    const Point x = g.node_coord(n);
    double prev = F(x, lo);
    for (int k = 1; k <= 16; ++k) {
      const double cur = F(x, lo + (hi - lo) * k / 16.0);
      if (cur < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
        v.applicable = false;
        v.note = "F(x, .) is not monotone nondecreasing at a sampled node";
        break;
      }
      prev = cur;
    }
  }

  if (v.applicable) {
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      if (g.is_boundary(n) && u1[n] > u2[n] + tolerance) {
        v.applicable = false;
        v.note = "boundary data are not ordered";
        v.location = g.node_coord(n);
        break;
      }
    }
  }

  if (v.applicable) {
    const ScalarField L1 = comparison_operator(u1, spec, F);
    const ScalarField L2 = comparison_operator(u2, spec, F);
    const double slack = 1e-8 * std::max(max_abs_interior(g, L1.values()), max_abs_interior(g, L2.values())) + 1e-14;
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      if (!g.is_boundary(n) && L1[n] > L2[n] + slack) {
        v.applicable = false;
        v.note = "operator values are not ordered";
        v.location = g.node_coord(n);
        break;
      }
    }
  }

  if (!v.applicable) {
    v.holds = true;
    return v;
  }
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (g.is_boundary(n)) continue;
    const double gap = u1[n] - u2[n];
    if (gap > v.worst_violation) {
      v.worst_violation = gap;
      v.location = g.node_coord(n);
    }
  }
  v.holds = v.worst_violation <= tolerance;
  return v;
}

std::vector<BoundaryDerivative> outer_normal_derivatives(const ScalarField& u) {
  const GridSpec& g = u.grid();
  if (u.locus() != Locus::Nodes) throw std::invalid_argument("boundary derivatives need a node field");
  std::vector<BoundaryDerivative> out;
  // Inward one-sided difference (-3 u0 + 4 u1 - u2) / 2h; outer = -inward.
  auto along = [&](std::size_t n0, std::size_t n1, std::size_t n2, double h) {
    out.push_back({n0, (3.0 * u[n0] - 4.0 * u[n1] + u[n2]) / (2.0 * h)});
  };
  const int nx = g.nodes_along(0);
  const double hx = g.spacing(0);
  if (g.dimension() == 1) {
    along(0, 1, 2, hx);
    along(nx - 1, nx - 2, nx - 3, hx);
    return out;
  }
  const int ny = g.nodes_along(1);
  const double hy = g.spacing(1);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (!g.is_boundary(n)) continue;
    const auto [i, j] = g.node_ij(n);
    const bool xe = i == 0 || i == nx - 1;
    const bool ye = j == 0 || j == ny - 1;
    if (xe && ye) continue;
    if (i == 0) along(n, g.node_index(1, j), g.node_index(2, j), hx);
    if (i == nx - 1) along(n, g.node_index(nx - 2, j), g.node_index(nx - 3, j), hx);
    if (j == 0) along(n, g.node_index(i, 1), g.node_index(i, 2), hy);
    if (j == ny - 1) along(n, g.node_index(i, ny - 2), g.node_index(i, ny - 3), hy);
  }
  return out;
}

PrincipleVerdict hopf_boundary_check(const ScalarField& u, const HopfOptions& opts) {
  const GridSpec& g = u.grid();
  double margin = opts.margin;
  if (margin < 0.0) {
    margin = g.spacing(0);
    if (g.dimension() == 2) margin = std::min(margin, g.spacing(1));
  }
  double sup = 0.0;
  for (double v : u.values()) sup = std::max(sup, v);
  const ScalarField w = opts.normalise && sup > 0.0 ? u.scaled(1.0 / sup) : u;

  PrincipleVerdict v;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const bool boundary = g.is_boundary(n);
    if ((boundary && std::abs(w[n]) > 1e-12) || (!boundary && w[n] < -1e-12)) {
      v.note = "field is not nonnegative with zero boundary values";
      break;
    }
  }
  v.worst_violation = -std::numeric_limits<double>::infinity();
  for (const BoundaryDerivative& d : outer_normal_derivatives(w)) {
    const double excess = d.derivative + margin;
    if (excess > v.worst_violation) {
      v.worst_violation = excess;
      v.location = g.node_coord(d.node);
    }
  }
  v.holds = v.worst_violation < 0.0;
  return v;
}

double collinearity(const ScalarField& u1, const ScalarField& u2) {
  if (!(u1.grid() == u2.grid()) || u1.locus() != Locus::Nodes || u2.locus() != Locus::Nodes) {
    throw std::invalid_argument("collinearity needs node fields on one grid");
  }
  const GridSpec& g = u1.grid();
  double dot = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (g.is_boundary(n)) continue;
    dot += u1[n] * u2[n];
    n1 += u1[n] * u1[n];
    n2 += u2[n] * u2[n];
  }
  if (n1 == 0.0 || n2 == 0.0) throw std::invalid_argument("collinearity of a zero field");
  return std::min(1.0, std::abs(dot) / (std::sqrt(n1) * std::sqrt(n2)));
}

double simplicity_check(const EigenResult& r1, const EigenResult& r2) {
  if (!r1.converged || !r2.converged) {
    throw std::invalid_argument("simplicity check needs two converged eigenpairs (residual above tolerance)");
  }
  return collinearity(r1.eigenfunction, r2.eigenfunction);
}

NonexistenceCheck nonexistence_check(const EigenResult& r, double lambda, const ProblemSpec& spec) {
  NonexistenceCheck out;
  out.lambda = lambda;
  out.lambda1 = r.lambda1;
  const EnergyBreakdown e = energy_breakdown(r.eigenfunction, lambda, spec);
  out.J = e.J;
  out.identity = (r.lambda1 - lambda) * e.B;
  const double denom = std::abs(out.identity) > 0.0 ? std::abs(out.identity) : std::max(e.A, 1.0);
  out.relative_error = std::abs(out.J - out.identity) / denom;
  if (lambda > r.lambda1) {
    out.verdict = out.J < 0.0;
  } else if (lambda < r.lambda1) {
    out.verdict = out.J > 0.0;
  } else {
    out.verdict = std::abs(out.J) <= 1e-12 * std::max(e.A, 1.0);
  }
  return out;
}

}  // namespace pxlap::harness
