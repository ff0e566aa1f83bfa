#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pxlap/level_set.hpp"

using namespace pxlap;

TEST(LevelSet, ConstantFieldBelowLevelFillsBall) {
  const GridSpec g = build_grid_1d({0, 1}, 65);
  const LevelSetData d = level_set(ScalarField::constant(g, 5.0), 3.0, {{0.5, 0.0}, 0.25});
  EXPECT_EQ(d.measure, d.ball_measure);
  EXPECT_GT(d.ball_measure, 0.0);
  EXPECT_EQ(d.oscillation, 0.0);
}

TEST(LevelSet, ConstantFieldAboveLevelIsEmpty) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 33, 33);
  const LevelSetData d = level_set(ScalarField::constant(g, 5.0), 7.0, {{0.5, 0.5}, 0.3});
  EXPECT_EQ(d.measure, 0.0);
  EXPECT_EQ(d.member_count, 0u);
}

TEST(LevelSet, SineOnCentralBall) {
  const GridSpec g = build_grid_1d({0, 1}, 129);
  const ScalarField u = sample_field("sin(pi*x)", g, Locus::Nodes);
  const LevelSetData d = level_set(u, 0.0, {{0.5, 0.0}, 0.25});
  EXPECT_EQ(d.measure, d.ball_measure);
  EXPECT_NEAR(d.sup_on_ball, 1.0, 1e-15);
  EXPECT_NEAR(d.oscillation, 1.0 - std::sin(oracle::pi / 4), 1e-14);
  // 0.25 <= x <= 0.75 on h = 1/128 holds 65 nodes
  EXPECT_EQ(d.ball_count, 65u);
  EXPECT_DOUBLE_EQ(d.ball_measure, 65.0 / 128.0);
  EXPECT_EQ(d.sup_on_ball - d.inf_on_ball, d.oscillation);
}

TEST(LevelSet, BallOutsideDomainThrows) {
  const GridSpec g = build_grid_1d({0, 1}, 17);
  EXPECT_THROW(level_set(ScalarField::constant(g, 1.0), 0.0, {{0.1, 0.0}, 0.2}), std::invalid_argument);
  EXPECT_FALSE(ball_inside(g, {{0.9, 0.0}, 0.2}));
  EXPECT_TRUE(ball_inside(g, {{0.5, 0.0}, 0.5}));
}

TEST(LevelSet, MeasureMonotoneInLevelOscMonotoneInRadius) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 41, 41);
  const ScalarField u = sample_field("sin(pi*x)*sin(pi*y) + 0.2*x", g, Locus::Nodes);
  double last = INFINITY;
  for (double k = -0.1; k < 1.3; k += 0.05) {
    const double m = level_set(u, k, {{0.45, 0.5}, 0.3}).measure;
    EXPECT_LE(m, last);
    last = m;
  }
  double osc = -1.0;
  for (double R = 0.02; R <= 0.4; R += 0.02) {
    const double o = level_set(u, 0.0, {{0.5, 0.5}, R}).oscillation;
    EXPECT_GE(o, osc);
    osc = o;
  }
}
