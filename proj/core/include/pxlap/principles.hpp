#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pxlap/eigen_solver.hpp"

namespace pxlap::harness {

struct PrincipleVerdict {
  bool holds = false;
  bool applicable = true;      ///< false when a precondition failed; never counted as a failure
  double worst_violation = 0.0;
  Point location{0.0, 0.0};    ///< node of the worst violation
  std::string note;
};

/// Lower-order term F(x, u) of -div(p |grad u|^(p-2) grad u) + F(x, u).
/// Expected to be nondecreasing in u.
struct MonotoneMap {
  std::string name;
  std::function<double(const Point&, double)> fn;

  double operator()(const Point& x, double u) const { return fn(x, u); }
};

MonotoneMap monotone_identity();
/// F(x, u) = |u|^(p0 - 2) u with a fixed exponent p0 > 1.
MonotoneMap monotone_power(double p0);

/// Lumped node weights: each cell hands vol / corners to each of its corners.
std::vector<double> lumped_weights(const GridSpec& grid);

/// Discrete operator L(u)_i = d/du_i sum_c vol |g_c|^p_c + w_i F(x_i, u_i) at
/// interior nodes; 0 on the boundary.  Boundary values of u may be nonzero.
ScalarField comparison_operator(const ScalarField& u, const ProblemSpec& spec, const MonotoneMap& F);

struct MonotoneSolveOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  ///< on max |L(u) - w f| relative to max |w f|; 1e-12 is below round-off on fine grids
};

struct MonotoneSolve {
  ScalarField u;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Solves L(u) = w f with u = 0 on the boundary by damped Newton-like steps
/// on the residual, the matrix being the gradient-term Hessian plus w dF/du.
MonotoneSolve solve_monotone_problem(const ProblemSpec& spec, const MonotoneMap& F, const ScalarField& forcing,
                                     const MonotoneSolveOptions& opts = {});

/// Checks u1 <= u2 in the interior.  Applicable when F is nondecreasing on
/// sampled values, L(u1) <= L(u2) node-wise and u1 <= u2 on the boundary.
PrincipleVerdict comparison_check(const ScalarField& u1, const ScalarField& u2, const MonotoneMap& F,
                                  const ProblemSpec& spec, double tolerance = 1e-6);

struct HopfOptions {
  double margin = -1.0;  ///< negative selects the smallest grid spacing
  bool normalise = true; ///< scale u to sup u = 1 first
};

/// One-sided second-order outer normal derivative at every boundary node
/// (2D corners excluded); holds when all are below -margin.  The worst
/// violation is max(derivative) + margin.
PrincipleVerdict hopf_boundary_check(const ScalarField& u, const HopfOptions& opts = {});

/// Outer normal derivatives in boundary-node order, with their nodes.
struct BoundaryDerivative {
  std::size_t node = 0;
  double derivative = 0.0;
};
std::vector<BoundaryDerivative> outer_normal_derivatives(const ScalarField& u);

/// |<u1, u2>| / (|u1| |u2|) over interior nodes.  Throws std::invalid_argument
/// on a grid mismatch or a zero field.
double collinearity(const ScalarField& u1, const ScalarField& u2);

/// Collinearity of two eigenfunctions.  Throws std::invalid_argument unless
/// both results converged.
double simplicity_check(const EigenResult& r1, const EigenResult& r2);

struct NonexistenceCheck {
  double lambda = 0.0;
  double lambda1 = 0.0;
  double J = 0.0;               ///< J_lambda(u1)
  double identity = 0.0;        ///< (lambda1 - lambda) B(u1)
  double relative_error = 0.0;  ///< |J - identity| / |identity|
  bool verdict = false;         ///< sign of J matches the sign of lambda1 - lambda
};

NonexistenceCheck nonexistence_check(const EigenResult& r, double lambda, const ProblemSpec& spec);

}  // namespace pxlap::harness
