#pragma once

namespace pxlap {

struct ShootingOptions {
  double ode_tolerance = 1e-13;     ///< absolute and relative error of the adaptive integrator
  double lambda_tolerance = 1e-12;  ///< relative width of the final lambda bracket
  int max_bisections = 200;
};

/// First eigenvalue of the 1D problem with p = const, a = 0, b = 1 on
/// (0, length), in the A/B normalisation used by the energies (gradient term
/// without 1/p, mass term with 1/p).  The Euler-Lagrange equation
///   (|u'|^(p-2) u')' + (lambda/p) |u|^(p-2) u = 0,  u(0) = 0, u'(0) = 1
/// is integrated as a first-order system in (u, |u'|^(p-2) u') and lambda is
/// bisected until the first zero of u after 0 lands on x = length.
///
/// Throws std::invalid_argument for p <= 1 or length <= 0 and
/// std::runtime_error when the lambda bracket cannot be established.
double constant_p_oracle(double p, double length, const ShootingOptions& opts = {});

/// First zero of u after x = 0 for a given lambda, or +infinity if u has not
/// returned to zero by x = horizon.
double first_zero(double p, double lambda, double horizon, double ode_tolerance = 1e-13);

}  // namespace pxlap
