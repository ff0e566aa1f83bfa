#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pxlap/field.hpp"

namespace pxlap {

enum class IntegrandKind { Function, Gradient };

/// rho(u) = integral of |u(x)|^p(x) over the domain.  The essential-sup term
/// over {p = infinity} never appears because p_plus is finite.
struct ModularValue {
  double value = 0.0;
  IntegrandKind kind = IntegrandKind::Function;
};

/// ||u|| = inf { lambda > 0 : rho(u / lambda) <= 1 }.
struct LuxemburgNorm {
  double value = 0.0;
  double bracket_lo = 0.0;  ///< final bisection bracket
  double bracket_hi = 0.0;
  int iterations = 0;       ///< bisection steps taken
};

struct LuxemburgOptions {
  double tolerance = 1e-12;  ///< stop when bracket width < tolerance * max(1, value)
  int max_iterations = 200;
};

/// Midpoint-rule modular.  Node fields are averaged to cell midpoints first;
/// quadrature-point fields are used as they are.  Throws std::invalid_argument
/// on a grid mismatch.
ModularValue modular(const ScalarField& u, const ExponentField& p);
/// Vector inputs use the Euclidean magnitude per cell.
ModularValue modular(const VectorField& g, const ExponentField& p);

/// Bisection on lambda over a bracket grown geometrically from 1.  Returns 0
/// for the zero field; throws std::runtime_error past the iteration cap.
LuxemburgNorm luxemburg_norm(const ScalarField& u, const ExponentField& p, const LuxemburgOptions& opts = {});
LuxemburgNorm luxemburg_norm(const VectorField& g, const ExponentField& p, const LuxemburgOptions& opts = {});

/// W^{1,p(x)} norm: ||u|| + sum over axes of ||du/dx_i||.
double sobolev_norm(const ScalarField& u, const ExponentField& p);

struct PoincareEstimate {
  double constant = 0.0;       ///< max over samples, a lower bound on the best constant
  std::vector<double> ratios;  ///< rho(u) / rho(grad u) per accepted sample
  int skipped = 0;             ///< samples with zero gradient modular
};

/// Lower bound on the best constant C in rho(u) <= C rho(grad u) over fields
/// vanishing on the boundary.  Sample 0 is the product-of-sines mode; the rest
/// are seeded random sine series and bumps at random amplitudes.  `extra`
/// fields (e.g. a computed eigenfunction) are added to the sample set.
PoincareEstimate poincare_constant_estimate(const GridSpec& grid, const ExponentField& p, int sample_count,
                                            std::uint64_t seed, std::span<const ScalarField> extra = {});

namespace detail {
/// vol * sum_c |m_c|^p_c over cell magnitudes m_c.
double modular_of_magnitudes(std::span<const double> magnitudes, const ExponentField& p, double volume);
LuxemburgNorm luxemburg_of_magnitudes(std::span<const double> magnitudes, const ExponentField& p, double volume,
                                      const LuxemburgOptions& opts);
}  // namespace detail

}  // namespace pxlap
