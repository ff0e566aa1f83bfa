#include "pxlap/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pxlap {

namespace {

constexpr double kGeomTol = 1e-12;

double distance(const Point& a, const Point& b, int dimension) {
  const double dx = a[0] - b[0];
  if (dimension == 1) return std::abs(dx);
  return std::hypot(dx, a[1] - b[1]);
}

}  // namespace

bool ball_inside(const GridSpec& grid, const Ball& ball) {
  if (!(ball.radius > 0.0)) return false;
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    const Interval& e = grid.extent(axis);
    const double slack = kGeomTol * e.length();
    if (ball.center[axis] - ball.radius < e.lo - slack) return false;
    if (ball.center[axis] + ball.radius > e.hi + slack) return false;
  }
  return true;
}

std::vector<bool> ball_mask(const GridSpec& grid, const Ball& ball) {
  std::vector<bool> mask(grid.node_count(), false);
  const double r = ball.radius * (1.0 + kGeomTol);
  for (std::size_t n = 0; n < mask.size(); ++n) {
    mask[n] = distance(grid.node_coord(n), ball.center, grid.dimension()) <= r;
  }
  return mask;
}

LevelSetData level_set(const ScalarField& u, double k, const Ball& ball) {
  if (u.locus() != Locus::Nodes) throw std::invalid_argument("level_set expects a node field");
  const GridSpec& g = u.grid();
  if (!ball_inside(g, ball)) throw std::invalid_argument("ball is not contained in the domain");

  LevelSetData d;
  d.level = k;
  d.ball = ball;
  d.ball_mask = ball_mask(g, ball);
  d.member_mask.assign(g.node_count(), false);
  d.sup_on_ball = -std::numeric_limits<double>::infinity();
  d.inf_on_ball = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (!d.ball_mask[n]) continue;
    ++d.ball_count;
    d.sup_on_ball = std::max(d.sup_on_ball, u[n]);
    d.inf_on_ball = std::min(d.inf_on_ball, u[n]);
    if (u[n] > k) {
      d.member_mask[n] = true;
      ++d.member_count;
    }
  }
  if (d.ball_count == 0) throw std::invalid_argument("ball contains no grid node");

  const double vol = g.cell_volume();
  d.measure = vol * static_cast<double>(d.member_count);
  d.ball_measure = vol * static_cast<double>(d.ball_count);
  d.oscillation = d.sup_on_ball - d.inf_on_ball;
  return d;
}

double integrate_nodes(const GridSpec& grid, std::span<const double> values, const std::vector<bool>& mask) {
  double sum = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (mask[n]) sum += values[n];
  }
  return grid.cell_volume() * sum;
}

double mean_integral(const GridSpec& grid, std::span<const double> values, const std::vector<bool>& mask,
                     double ball_measure) {
  if (!(ball_measure > 0.0)) throw std::invalid_argument("mean integral over an empty ball");
  return integrate_nodes(grid, values, mask) / ball_measure;
}

std::vector<double> nodal_gradient_magnitude(const ScalarField& u) {
  const VectorField grad = discrete_gradient(u);
  const GridSpec& g = u.grid();
  std::vector<double> gx(g.node_count(), 0.0);
  std::vector<double> gy(g.node_count(), 0.0);
  std::vector<int> count(g.node_count(), 0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto k = g.cell_corners(c);
    for (int q = 0; q < g.corners_per_cell(); ++q) {
      gx[k[q]] += grad.component(0)[c];
      if (g.dimension() == 2) gy[k[q]] += grad.component(1)[c];
      ++count[k[q]];
    }
  }
  std::vector<double> mag(g.node_count());
  for (std::size_t n = 0; n < mag.size(); ++n) {
    mag[n] = std::hypot(gx[n], gy[n]) / count[n];
  }
  return mag;
}

}  // namespace pxlap
