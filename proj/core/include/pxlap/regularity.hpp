#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pxlap/energy.hpp"
#include "pxlap/level_set.hpp"

namespace pxlap::harness {

struct EstimateWitness {
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  ///< lhs / rhs, 0 when both vanish
};

/// Measured constant of an inequality lhs <= C * rhs over a witness family.
struct ConstantEstimate {
  double estimated_c = 0.0;  ///< max witness ratio
  std::vector<EstimateWitness> witnesses;
  bool stability_checked = false;
  bool stable_across_resolutions = false;
  double resolution_ratio = 1.0;  ///< max(C_coarse, C_fine) / min(...)

  void add(std::map<std::string, double> params, double lhs, double rhs);
  bool finite() const;
};

/// Marks `coarse` stable when its constant and the one measured on the
/// refined grid agree within `factor`.
void compare_resolutions(ConstantEstimate& coarse, const ConstantEstimate& fine, double factor = 4.0);

struct RadiusTriple {
  double s = 0.0;
  double t = 0.0;
  double R = 0.0;
};

/// Caccioppoli ratio
///   int_{A(k,s)} |grad u|^p-  /  ( int_{A(k,t)} |(u-k)/(t-s)|^p+ + (1 + k^p+) |A(k,R)| )
/// for every level k and radius triple, on balls centred at `center`.
/// Requires 0 < s < t < R < 1, k > 0 and B_R inside the domain.
ConstantEstimate caccioppoli_constant(const ScalarField& u, const ProblemSpec& spec, const Point& center,
                                      std::span<const double> levels, std::span<const RadiusTriple> radii);

struct OscillationProfile {
  std::vector<double> radii;
  std::vector<double> oscillations;  ///< osc(u, R/2) per radius
  std::vector<double> bounds;        ///< C * R^(p-/p+) with the fitted C
  double holder_exponent = 0.0;      ///< p- / p+
  bool exponent_fitted = false;
  double fitted_exponent = 0.0;      ///< least-squares slope of log osc against log R
  ConstantEstimate estimate;         ///< osc(u, R/2) / R^(p-/p+)
};

/// Needs at least 3 radii with B_R inside the domain.
OscillationProfile oscillation_profile(const ScalarField& u, const Point& center, std::span<const double> radii,
                                       double holder_exponent);

struct HarnackCheck {
  double beta = 0.0;  ///< positive root of beta (beta + 1) = 1/n
  double lhs = 0.0;   ///< sup over B_{R/2} of u / sup u
  double bracket = 0.0;
  ConstantEstimate estimate;
};

/// Normalises u to sup u = 1, then compares sup_{B_{R/2}} u with
///   R^(p/q) ( (|A(0,R)| / R^n)^beta mean_{A(0,R)} |u/R|^p(x) + R^n )^(1/q),
/// p = p-, q = p+.  The zero field passes with lhs = 0.
HarnackCheck harnack_bound_check(const ScalarField& u, const ProblemSpec& spec, const Point& center, double R);

/// Positive root of beta^2 + beta - 1/n = 0.
double harnack_beta(int n);

struct SpWitness {
  double lhs = 0.0;           ///< (mean_{B_R} |w/R|^(a n/(n-1)))^((n-1)/n)
  double gradient_term = 0.0; ///< mean_{B_R} |grad w|^a
  double support_term = 0.0;  ///< |{x in B_R : |w| > 0}|^gamma
};

struct SpInequalityCheck {
  std::vector<SpWitness> witnesses;
  double c = 0.0;    ///< chosen pair, minimising c + chi over the search grid
  double chi = 0.0;
  bool holds = false;  ///< every witness satisfies lhs <= c G + chi S
};

/// Sobolev-Poincare inequality with variable exponent `a` on a 2D ball.
/// Each witness u is windowed by (1 - |x - center|^2 / R^2)_+ so that it
/// vanishes on the sphere.  Throws std::invalid_argument on a 1D grid.
SpInequalityCheck sp_inequality_check(std::span<const ScalarField> witnesses, const ExponentField& a,
                                      const Point& center, double R, double gamma = 1.0);

}  // namespace pxlap::harness
