#include <gtest/gtest.h>

#include "pxlap/grid.hpp"

using namespace pxlap;

TEST(Grid, UnitIntervalFiveNodes) {
  const GridSpec g = build_grid_1d({0.0, 1.0}, 5);
  EXPECT_EQ(g.dimension(), 1);
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.cell_count(), 4u);
  EXPECT_DOUBLE_EQ(g.spacing(0), 0.25);
  EXPECT_EQ(g.boundary_node_count(), 2u);
  EXPECT_TRUE(g.is_boundary(0));
  EXPECT_TRUE(g.is_boundary(4));
  EXPECT_FALSE(g.is_boundary(2));
  EXPECT_DOUBLE_EQ(g.node_coord(3)[0], 0.75);
  EXPECT_DOUBLE_EQ(g.cell_midpoint(0)[0], 0.125);
  EXPECT_DOUBLE_EQ(g.domain_measure(), 1.0);
}

TEST(Grid, ThreeByThreeSquareHasOneInteriorNode) {
  const GridSpec g = build_grid_2d({0.0, 1.0}, {0.0, 1.0}, 3, 3);
  EXPECT_EQ(g.node_count(), 9u);
  EXPECT_EQ(g.boundary_node_count(), 8u);
  EXPECT_EQ(g.interior_node_count(), 1u);
  EXPECT_FALSE(g.is_boundary(g.node_index(1, 1)));
  EXPECT_DOUBLE_EQ(g.cell_volume(), 0.25);
}

TEST(Grid, RejectsTooFewNodes) {
  EXPECT_THROW(build_grid_1d({0.0, 1.0}, 2), std::invalid_argument);
}

TEST(Grid, RejectsEmptyExtentAndBadDimension) {
  EXPECT_THROW(build_grid_1d({1.0, 1.0}, 5), std::invalid_argument);
  EXPECT_THROW(build_grid_1d({1.0, 0.0}, 5), std::invalid_argument);
  const Interval e[] = {{0, 1}, {0, 1}, {0, 1}};
  const int n[] = {3, 3, 3};
  EXPECT_THROW(build_grid(3, e, n), std::invalid_argument);
}

TEST(Grid, CornerOrderingIsXFastest) {
  const GridSpec g = build_grid_2d({0.0, 2.0}, {0.0, 1.0}, 5, 3);
  const auto k = g.cell_corners(g.cell_index(1, 1));
  EXPECT_EQ(k[0], g.node_index(1, 1));
  EXPECT_EQ(k[1], g.node_index(2, 1));
  EXPECT_EQ(k[2], g.node_index(1, 2));
  EXPECT_EQ(k[3], g.node_index(2, 2));
  EXPECT_DOUBLE_EQ(g.spacing(0), 0.5);
  EXPECT_DOUBLE_EQ(g.spacing(1), 0.5);
}

TEST(Grid, EqualityComparesGeometryOnly) {
  EXPECT_EQ(build_grid_1d({0, 1}, 9), build_grid_1d({0, 1}, 9));
  EXPECT_FALSE(build_grid_1d({0, 1}, 9) == build_grid_1d({0, 1}, 17));
}
