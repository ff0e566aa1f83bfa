#include "pxlap/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pxlap {

GridSpec build_grid(int dimension, std::span<const Interval> extents, std::span<const int> node_counts) {
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2, got " + std::to_string(dimension));
  }
  if (extents.size() != static_cast<std::size_t>(dimension) ||
      node_counts.size() != static_cast<std::size_t>(dimension)) {
    throw std::invalid_argument("grid needs one extent and one node count per axis");
  }

  GridSpec g;
  g.dimension_ = dimension;
  for (int axis = 0; axis < dimension; ++axis) {
    const Interval& e = extents[axis];
    if (!std::isfinite(e.lo) || !std::isfinite(e.hi) || !(e.hi > e.lo)) {
      throw std::invalid_argument("grid extent along axis " + std::to_string(axis) +
                                  " must have positive length");
    }
    if (node_counts[axis] < 3) {
      throw std::invalid_argument("grid needs at least 3 nodes per axis, got " +
                                  std::to_string(node_counts[axis]) + " along axis " +
                                  std::to_string(axis));
    }
    g.extents_[axis] = e;
    g.counts_[axis] = node_counts[axis];
    g.spacing_[axis] = e.length() / (node_counts[axis] - 1);
  }
  if (dimension == 1) {
    g.extents_[1] = Interval{0.0, 0.0};
    g.counts_[1] = 1;
    g.spacing_[1] = 0.0;
  }
  return g;
}

std::size_t GridSpec::node_count() const {
  return static_cast<std::size_t>(counts_[0]) * static_cast<std::size_t>(counts_[1]);
}

std::size_t GridSpec::cell_count() const {
  return static_cast<std::size_t>(cells_along(0)) * static_cast<std::size_t>(cells_along(1));
}

double GridSpec::cell_volume() const {
  return dimension_ == 1 ? spacing_[0] : spacing_[0] * spacing_[1];
}

double GridSpec::domain_measure() const {
  return dimension_ == 1 ? extents_[0].length() : extents_[0].length() * extents_[1].length();
}

std::array<int, 2> GridSpec::node_ij(std::size_t node) const {
  const auto nx = static_cast<std::size_t>(counts_[0]);
  return {static_cast<int>(node % nx), static_cast<int>(node / nx)};
}

std::array<int, 2> GridSpec::cell_ij(std::size_t cell) const {
  const auto cx = static_cast<std::size_t>(counts_[0] - 1);
  return {static_cast<int>(cell % cx), static_cast<int>(cell / cx)};
}

Point GridSpec::node_coord(std::size_t node) const {
  const auto [i, j] = node_ij(node);
  // Pin the last node to hi so that extents are reproduced exactly.
  auto coord = [&](int axis, int k) {
    if (k == counts_[axis] - 1) return extents_[axis].hi;
    return extents_[axis].lo + k * spacing_[axis];
  };
  return {coord(0, i), dimension_ == 2 ? coord(1, j) : 0.0};
}

Point GridSpec::cell_midpoint(std::size_t cell) const {
  const auto [i, j] = cell_ij(cell);
  return {extents_[0].lo + (i + 0.5) * spacing_[0],
          dimension_ == 2 ? extents_[1].lo + (j + 0.5) * spacing_[1] : 0.0};
}

bool GridSpec::is_boundary(std::size_t node) const {
  const auto [i, j] = node_ij(node);
  if (i == 0 || i == counts_[0] - 1) return true;
  if (dimension_ == 2 && (j == 0 || j == counts_[1] - 1)) return true;
  return false;
}

std::size_t GridSpec::boundary_node_count() const {
  if (dimension_ == 1) return 2;
  return node_count() - static_cast<std::size_t>(counts_[0] - 2) * static_cast<std::size_t>(counts_[1] - 2);
}

std::array<std::size_t, 4> GridSpec::cell_corners(std::size_t cell) const {
  const auto [i, j] = cell_ij(cell);
  if (dimension_ == 1) {
    return {node_index(i), node_index(i + 1), 0, 0};
  }
  return {node_index(i, j), node_index(i + 1, j), node_index(i, j + 1), node_index(i + 1, j + 1)};
}

bool GridSpec::operator==(const GridSpec& other) const {
  return dimension_ == other.dimension_ && extents_ == other.extents_ && counts_ == other.counts_;
}

}  // namespace pxlap
