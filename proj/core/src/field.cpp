#include "pxlap/field.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pxlap {

namespace {

std::size_t expected_size(const GridSpec& grid, Locus locus) {
  return locus == Locus::Nodes ? grid.node_count() : grid.cell_count();
}

std::string describe(const Point& p, int dimension) {
  std::ostringstream os;
  os << std::setprecision(6) << "(" << p[0];
  if (dimension == 2) os << ", " << p[1];
  os << ")";
  return os.str();
}

}  // namespace

ScalarField::ScalarField(GridSpec grid, Locus locus, std::vector<double> values)
    : grid_(std::move(grid)), locus_(locus), values_(std::move(values)) {
  if (values_.size() != expected_size(grid_, locus_)) {
    throw std::invalid_argument("scalar field has " + std::to_string(values_.size()) +
                                " values, grid expects " +
                                std::to_string(expected_size(grid_, locus_)));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("scalar field contains a non-finite value");
  }
}

ScalarField ScalarField::constant(const GridSpec& grid, double value, Locus locus) {
  return ScalarField(grid, locus, std::vector<double>(expected_size(grid, locus), value));
}

Point ScalarField::coord(std::size_t i) const {
  return locus_ == Locus::Nodes ? grid_.node_coord(i) : grid_.cell_midpoint(i);
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

ScalarField ScalarField::scaled(double t) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= t;
  return ScalarField(grid_, locus_, std::move(v));
}

VectorField::VectorField(GridSpec grid, std::array<std::vector<double>, 2> components)
    : grid_(std::move(grid)), components_(std::move(components)) {
  for (int axis = 0; axis < grid_.dimension(); ++axis) {
    if (components_[axis].size() != grid_.cell_count()) {
      throw std::invalid_argument("vector field component size does not match cell count");
    }
    for (double v : components_[axis]) {
      if (!std::isfinite(v)) throw std::invalid_argument("vector field contains a non-finite value");
    }
  }
}

double VectorField::magnitude(std::size_t cell) const {
  if (grid_.dimension() == 1) return std::abs(components_[0][cell]);
  return std::hypot(components_[0][cell], components_[1][cell]);
}

double ExponentField::conjugate(std::size_t cell) const {
  const double p = samples_[cell];
  return p / (p - 1.0);
}

double ExponentField::sobolev_conjugate(std::size_t cell) const {
  const double p = samples_[cell];
  const double n = grid().dimension();
  if (p >= n) return std::numeric_limits<double>::infinity();
  return n * p / (n - p);
}

double CoefficientFields::b_sup() const { return b_.max_abs(); }

bool CoefficientFields::a_is_zero() const { return a_.max_abs() == 0.0; }

CoefficientFields make_coefficients(ScalarField a, ScalarField b) {
  if (a.locus() != Locus::QuadraturePoints || b.locus() != Locus::QuadraturePoints) {
    throw std::invalid_argument("coefficients a and b must be sampled at quadrature points");
  }
  if (!(a.grid() == b.grid())) throw std::invalid_argument("coefficients a and b live on different grids");
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c] < 0.0) {
      throw std::invalid_argument("coefficient a must be nonnegative, a = " + std::to_string(a[c]) +
                                  " at " + describe(a.coord(c), a.grid().dimension()));
    }
  }
  const bool positive_part = std::any_of(b.values().begin(), b.values().end(), [](double v) { return v > 0.0; });
  if (!positive_part) throw std::invalid_argument("coefficient b has no positive part (max(b, 0) == 0)");

  CoefficientFields out;
  out.a_ = std::move(a);
  out.b_ = std::move(b);
  return out;
}

ScalarField sample_field(const Expression& expression, const GridSpec& grid, Locus locus) {
  if (expression.uses_y() && grid.dimension() == 1) {
    throw ExpressionError("expression \"" + expression.text() + "\" uses y on a 1D grid");
  }
  const std::size_t n = expected_size(grid, locus);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = locus == Locus::Nodes ? grid.node_coord(i) : grid.cell_midpoint(i);
    values[i] = expression.evaluate(p[0], p[1]);
    if (!std::isfinite(values[i])) {
      throw std::domain_error("expression \"" + expression.text() + "\" is not finite at " +
                              describe(p, grid.dimension()));
    }
  }
  return ScalarField(grid, locus, std::move(values));
}

ScalarField sample_field(std::string_view expression, const GridSpec& grid, Locus locus) {
  return sample_field(Expression::parse(expression), grid, locus);
}

ExponentField validate_exponent(const ScalarField& raw) {
  if (raw.locus() != Locus::QuadraturePoints) {
    throw std::invalid_argument("exponent must be sampled at quadrature points");
  }
  const GridSpec& g = raw.grid();
  ExponentField p;
  p.p_minus_ = std::numeric_limits<double>::infinity();
  p.p_plus_ = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < raw.size(); ++c) {
    const double v = raw[c];
    if (!(v > 1.0)) {
      throw std::invalid_argument("exponent must satisfy p(x) > 1, got p = " + std::to_string(v) + " at " +
                                  describe(raw.coord(c), g.dimension()));
    }
    p.p_minus_ = std::min(p.p_minus_, v);
    p.p_plus_ = std::max(p.p_plus_, v);
  }

  for (std::size_t c = 0; c < raw.size(); ++c) {
    const auto [i, j] = g.cell_ij(c);
    if (i + 1 < g.cells_along(0)) {
      const double jump = std::abs(raw[g.cell_index(i + 1, j)] - raw[c]);
      p.max_jump_ = std::max(p.max_jump_, jump);
      p.lipschitz_ = std::max(p.lipschitz_, jump / g.spacing(0));
    }
    if (g.dimension() == 2 && j + 1 < g.cells_along(1)) {
      const double jump = std::abs(raw[g.cell_index(i, j + 1)] - raw[c]);
      p.max_jump_ = std::max(p.max_jump_, jump);
      p.lipschitz_ = std::max(p.lipschitz_, jump / g.spacing(1));
    }
  }
  p.samples_ = raw;
  return p;
}

VectorField discrete_gradient(const ScalarField& u) {
  if (u.locus() != Locus::Nodes) throw std::invalid_argument("discrete_gradient expects a node field");
  const GridSpec& g = u.grid();
  const std::size_t nc = g.cell_count();
  std::array<std::vector<double>, 2> comp;
  comp[0].resize(nc);
  if (g.dimension() == 1) {
    const double h = g.spacing(0);
    for (std::size_t c = 0; c < nc; ++c) comp[0][c] = (u[c + 1] - u[c]) / h;
  } else {
    comp[1].resize(nc);
    const double hx = g.spacing(0);
    const double hy = g.spacing(1);
    for (std::size_t c = 0; c < nc; ++c) {
      const auto k = g.cell_corners(c);
      comp[0][c] = ((u[k[1]] + u[k[3]]) - (u[k[0]] + u[k[2]])) / (2.0 * hx);
      comp[1][c] = ((u[k[2]] + u[k[3]]) - (u[k[0]] + u[k[1]])) / (2.0 * hy);
    }
  }
  return VectorField(g, std::move(comp));
}

ScalarField cell_average(const ScalarField& u) {
  if (u.locus() != Locus::Nodes) throw std::invalid_argument("cell_average expects a node field");
  const GridSpec& g = u.grid();
  std::vector<double> out(g.cell_count());
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto k = g.cell_corners(c);
    out[c] = g.dimension() == 1 ? 0.5 * (u[k[0]] + u[k[1]]) : 0.25 * ((u[k[0]] + u[k[1]]) + (u[k[2]] + u[k[3]]));
  }
  return ScalarField(g, Locus::QuadraturePoints, std::move(out));
}

ScalarField nodal_average(const ScalarField& cell_field) {
  if (cell_field.locus() != Locus::QuadraturePoints) {
    throw std::invalid_argument("nodal_average expects a quadrature-point field");
  }
  const GridSpec& g = cell_field.grid();
  std::vector<double> sum(g.node_count(), 0.0);
  std::vector<int> count(g.node_count(), 0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto k = g.cell_corners(c);
    for (int q = 0; q < g.corners_per_cell(); ++q) {
      sum[k[q]] += cell_field[c];
      ++count[k[q]];
    }
  }
  for (std::size_t n = 0; n < sum.size(); ++n) sum[n] /= count[n];
  return ScalarField(g, Locus::Nodes, std::move(sum));
}

ScalarField with_dirichlet_zero(const ScalarField& u) {
  if (u.locus() != Locus::Nodes) throw std::invalid_argument("Dirichlet data applies to node fields");
  std::vector<double> v(u.values().begin(), u.values().end());
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (u.grid().is_boundary(n)) v[n] = 0.0;
  }
  return ScalarField(u.grid(), Locus::Nodes, std::move(v));
}

double boundary_max_abs(const ScalarField& u) {
  double m = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n) {
    if (u.grid().is_boundary(n)) m = std::max(m, std::abs(u[n]));
  }
  return m;
}

void write_csv(std::ostream& os, const ScalarField& u) {
  const bool two_d = u.grid().dimension() == 2;
  os << (two_d ? "x,y,value\n" : "x,value\n");
  os << std::setprecision(17);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Point p = u.coord(i);
    os << p[0] << ',';
    if (two_d) os << p[1] << ',';
    os << u[i] << '\n';
  }
}

}  // namespace pxlap
