#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pxlap {

/// Closed coordinate interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

using Point = std::array<double, 2>;

/// Uniform tensor grid over an interval (dimension 1) or a rectangle
/// (dimension 2).  Nodes carry the unknowns; cells are the quadrature
/// elements, each with a single midpoint sample.
///
/// Node ordering is x-fastest: node (i, j) has index i + j * nx.  Cell
/// (i, j) spans nodes i..i+1 and j..j+1 and has index i + j * (nx - 1).
/// In one dimension the second axis is degenerate (one node, one cell row).
class GridSpec {
 public:
  GridSpec() = default;

  int dimension() const { return dimension_; }
  const Interval& extent(int axis) const { return extents_[axis]; }
  int nodes_along(int axis) const { return counts_[axis]; }
  int cells_along(int axis) const { return axis < dimension_ ? counts_[axis] - 1 : 1; }
  double spacing(int axis) const { return spacing_[axis]; }

  std::size_t node_count() const;
  std::size_t cell_count() const;

  /// Volume (length in 1D, area in 2D) of one cell.
  double cell_volume() const;
  /// Total measure of the domain.
  double domain_measure() const;

  std::size_t node_index(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * counts_[0];
  }
  std::size_t cell_index(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * (counts_[0] - 1);
  }
  /// Axis indices (i, j) of a node.
  std::array<int, 2> node_ij(std::size_t node) const;
  std::array<int, 2> cell_ij(std::size_t cell) const;

  Point node_coord(std::size_t node) const;
  Point cell_midpoint(std::size_t cell) const;

  bool is_boundary(std::size_t node) const;
  std::size_t boundary_node_count() const;
  std::size_t interior_node_count() const { return node_count() - boundary_node_count(); }

  /// The 2^dim node indices at the corners of a cell, ordered
  /// (i, j), (i+1, j), (i, j+1), (i+1, j+1); only the first two in 1D.
  std::array<std::size_t, 4> cell_corners(std::size_t cell) const;
  int corners_per_cell() const { return dimension_ == 1 ? 2 : 4; }

  /// True when the spatial descriptions agree (dimension, extents, counts).
  bool operator==(const GridSpec& other) const;

 private:
  friend GridSpec build_grid(int, std::span<const Interval>, std::span<const int>);

  int dimension_ = 1;
  std::array<Interval, 2> extents_{};
  std::array<int, 2> counts_{1, 1};
  std::array<double, 2> spacing_{0.0, 0.0};
};

/// Builds a uniform grid. Throws std::invalid_argument when the dimension is
/// not 1 or 2, an extent has non-positive length, or a node count is below 3.
GridSpec build_grid(int dimension, std::span<const Interval> extents, std::span<const int> node_counts);

inline GridSpec build_grid_1d(Interval x, int nx) {
  const Interval e[] = {x};
  const int n[] = {nx};
  return build_grid(1, e, n);
}

inline GridSpec build_grid_2d(Interval x, Interval y, int nx, int ny) {
  const Interval e[] = {x, y};
  const int n[] = {nx, ny};
  return build_grid(2, e, n);
}

}  // namespace pxlap
