#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pxlap/field.hpp"

namespace pxlap {

/// Data of the Dirichlet eigenvalue problem
///   -div(p |grad u|^(p-2) grad u) + a |u|^(p-2) u = lambda b |u|^(p-2) u,  u = 0 on the boundary.
class ProblemSpec {
 public:
  ProblemSpec() = default;
  /// Throws std::invalid_argument when p, a, b do not share a grid.
  ProblemSpec(ExponentField p, CoefficientFields coeffs);

  /// Samples p, a, b at quadrature points and validates them.
  static ProblemSpec from_expressions(const GridSpec& grid, std::string_view p, std::string_view a,
                                      std::string_view b);

  const GridSpec& grid() const { return p_.grid(); }
  const ExponentField& p() const { return p_; }
  const CoefficientFields& coeffs() const { return coeffs_; }

  /// Same data with b replaced by t * b.
  ProblemSpec with_scaled_b(double t) const;
  /// Same data with a replaced by a + c.
  ProblemSpec with_shifted_a(double c) const;

 private:
  ExponentField p_;
  CoefficientFields coeffs_;
};

struct EnergyBreakdown {
  double A = 0.0;
  double B = 0.0;
  double R = 0.0;  ///< B / A
  double J = 0.0;  ///< A - lambda * B
  double lambda = 0.0;
};

/// Gradient of the discrete functional J_lambda with respect to node values.
struct WeakResidual {
  ScalarField residual;  ///< zero on boundary nodes
  double norm = 0.0;     ///< sqrt(sum r_i^2 / cell volume), an L2 proxy of the residual density
};

/// A(u) = integral of |grad u|^p + (a/p)|u|^p.  The gradient term carries no
/// 1/p factor.  Throws std::invalid_argument when u does not vanish on the
/// boundary (tolerance 1e-12 relative to max |u|).
double energy_A(const ScalarField& u, const ProblemSpec& spec);
/// B(u) = integral of (b/p)|u|^p.
double energy_B(const ScalarField& u, const ProblemSpec& spec);
/// R(u) = B(u) / A(u).  Throws std::invalid_argument for the zero field.
double rayleigh(const ScalarField& u, const ProblemSpec& spec);
/// J_lambda(u) = A(u) - lambda B(u).
double functional_J(const ScalarField& u, double lambda, const ProblemSpec& spec);
EnergyBreakdown energy_breakdown(const ScalarField& u, double lambda, const ProblemSpec& spec);

/// Exact gradient of the discrete J_lambda (discretise, then differentiate):
///   r_i = d/du_i [ sum_c vol (|g_c|^p + (a/p)|m_c|^p - lambda (b/p)|m_c|^p) ]
/// for interior nodes i, where g_c and m_c are the cell gradient and mean.
WeakResidual weak_residual(const ScalarField& u, double lambda, const ProblemSpec& spec);

namespace detail {

struct Energies {
  double A = 0.0;
  double B = 0.0;
};

/// Energies of a raw node vector (no boundary check).
Energies energies(const ProblemSpec& spec, std::span<const double> u);

/// Fills node-sized gradients of A and B; boundary entries are zero.
void energy_gradients(const ProblemSpec& spec, std::span<const double> u, std::span<double> grad_A,
                      std::span<double> grad_B);

/// sqrt(sum over interior nodes of r_i^2 / cell volume).
double residual_norm(const GridSpec& grid, std::span<const double> r);

/// Gradient flux |g|^(p-2) g for one component pair, 0 at g = 0.
void flux(double p, double gx, double gy, double& fx, double& fy);

}  // namespace detail

}  // namespace pxlap
