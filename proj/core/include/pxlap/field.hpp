#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "pxlap/expression.hpp"
#include "pxlap/grid.hpp"

namespace pxlap {

/// Where the samples of a grid function live.
enum class Locus {
  Nodes,             ///< one value per grid node
  QuadraturePoints,  ///< one value per cell midpoint
};

/// A real-valued grid function.  Immutable once built; all values finite.
class ScalarField {
 public:
  ScalarField() = default;
  /// Throws std::invalid_argument on a length mismatch or a non-finite value.
  ScalarField(GridSpec grid, Locus locus, std::vector<double> values);

  static ScalarField constant(const GridSpec& grid, double value, Locus locus = Locus::Nodes);

  const GridSpec& grid() const { return grid_; }
  Locus locus() const { return locus_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Coordinates of sample i (node coordinate or cell midpoint).
  Point coord(std::size_t i) const;

  double max_abs() const;
  ScalarField scaled(double t) const;

 private:
  GridSpec grid_;
  Locus locus_ = Locus::Nodes;
  std::vector<double> values_;
};

/// Cell-centred vector field, one component per axis per cell.
class VectorField {
 public:
  VectorField() = default;
  VectorField(GridSpec grid, std::array<std::vector<double>, 2> components);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> component(int axis) const { return components_[axis]; }
  std::size_t size() const { return components_[0].size(); }
  /// Euclidean length at a cell.
  double magnitude(std::size_t cell) const;

 private:
  GridSpec grid_;
  std::array<std::vector<double>, 2> components_;
};

/// Variable exponent p(x) sampled at quadrature points with certified bounds
/// 1 < p_minus <= p(x) <= p_plus < infinity.
class ExponentField {
 public:
  ExponentField() = default;

  const ScalarField& samples() const { return samples_; }
  const GridSpec& grid() const { return samples_.grid(); }
  double operator[](std::size_t cell) const { return samples_[cell]; }

  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  /// Largest first-difference slope between neighbouring cells.
  double lipschitz_estimate() const { return lipschitz_; }
  /// Largest jump between neighbouring cells.
  double max_jump() const { return max_jump_; }
  /// Set when a neighbour jump exceeds kRoughJump, i.e. p looks discontinuous.
  bool lipschitz_flagged() const { return max_jump_ > kRoughJump; }
  bool is_constant() const { return p_plus_ == p_minus_; }

  /// p'(x) = p / (p - 1).
  double conjugate(std::size_t cell) const;
  /// n p / (n - p) with n the grid dimension, +infinity when p >= n.
  double sobolev_conjugate(std::size_t cell) const;

  static constexpr double kRoughJump = 0.1;

 private:
  friend ExponentField validate_exponent(const ScalarField& raw);

  ScalarField samples_;
  double p_minus_ = 2.0;
  double p_plus_ = 2.0;
  double lipschitz_ = 0.0;
  double max_jump_ = 0.0;
};

/// Zeroth-order coefficients a(x) >= 0 and b(x) with a nontrivial positive part.
class CoefficientFields {
 public:
  CoefficientFields() = default;

  const ScalarField& a() const { return a_; }
  const ScalarField& b() const { return b_; }
  double b_plus(std::size_t cell) const { return b_[cell] > 0.0 ? b_[cell] : 0.0; }
  double b_minus(std::size_t cell) const { return b_[cell] < 0.0 ? -b_[cell] : 0.0; }
  /// sup |b|, the L-infinity norm of b.
  double b_sup() const;
  bool a_is_zero() const;

 private:
  friend CoefficientFields make_coefficients(ScalarField a, ScalarField b);

  ScalarField a_;
  ScalarField b_;
};

/// Validates a and b (same grid, quadrature locus, a >= 0, max(b, 0) not
/// identically zero).  Throws std::invalid_argument otherwise.
CoefficientFields make_coefficients(ScalarField a, ScalarField b);

/// Evaluates a closed-form expression at nodes or at cell midpoints.
/// Throws ExpressionError for malformed text or for `y` on a 1D grid, and
/// std::domain_error when an evaluation is not finite.
ScalarField sample_field(const Expression& expression, const GridSpec& grid, Locus locus);
ScalarField sample_field(std::string_view expression, const GridSpec& grid, Locus locus);

/// Checks 1 < p everywhere and computes p_minus, p_plus and the Lipschitz
/// estimate.  `raw` must be sampled at quadrature points.
ExponentField validate_exponent(const ScalarField& raw);

/// Cell-centred first differences.  In 2D the gradient of the bilinear
/// interpolant at the cell centre; exact for affine fields.
VectorField discrete_gradient(const ScalarField& u);

/// Midpoint values: mean of the cell's corner values.
ScalarField cell_average(const ScalarField& u);

/// Node values of a cell field: mean over the cells touching each node.
ScalarField nodal_average(const ScalarField& cell_field);

/// Copy of u with boundary nodes set to zero.
ScalarField with_dirichlet_zero(const ScalarField& u);

/// Largest |u| over boundary nodes.
double boundary_max_abs(const ScalarField& u);

/// CSV with a header row: x,value (1D) or x,y,value (2D).  One row per sample.
void write_csv(std::ostream& os, const ScalarField& u);

}  // namespace pxlap
