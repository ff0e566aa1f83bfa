#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pxlap/field.hpp"

namespace pxlap {

/// Closed Euclidean ball, discretised as the set of grid nodes within
/// distance `radius` of `center`.
struct Ball {
  Point center{0.0, 0.0};
  double radius = 0.0;
};

/// Super-level set A(k, R) = {x in B_R : u(x) > k} and the ball statistics
/// M(u, R) = sup u, m(u, R) = inf u and osc(u, R) = M - m over B_R.
struct LevelSetData {
  double level = 0.0;
  Ball ball;
  std::vector<bool> ball_mask;    ///< nodes inside B_R
  std::vector<bool> member_mask;  ///< nodes of A(k, R)
  std::size_t ball_count = 0;
  std::size_t member_count = 0;
  double measure = 0.0;       ///< |A(k, R)| = cell volume * member count
  double ball_measure = 0.0;  ///< |B_R| = cell volume * ball count
  double sup_on_ball = 0.0;
  double inf_on_ball = 0.0;
  double oscillation = 0.0;
};

/// True when the closed ball lies inside the closed domain.
bool ball_inside(const GridSpec& grid, const Ball& ball);

/// Node mask of a ball.  Does not check containment.
std::vector<bool> ball_mask(const GridSpec& grid, const Ball& ball);

/// Throws std::invalid_argument when u is not a node field, the ball leaves
/// the domain, or it contains no grid node.
LevelSetData level_set(const ScalarField& u, double k, const Ball& ball);

/// Node-quadrature integral of per-node values over a mask:
/// sum over masked nodes of cell_volume * values[n].
double integrate_nodes(const GridSpec& grid, std::span<const double> values, const std::vector<bool>& mask);

/// Measure-normalised integral: the integral over `mask` divided by the ball measure.
double mean_integral(const GridSpec& grid, std::span<const double> values, const std::vector<bool>& mask,
                     double ball_measure);

/// |grad u| at nodes, from the mean of the adjacent cell gradients.
std::vector<double> nodal_gradient_magnitude(const ScalarField& u);

}  // namespace pxlap
