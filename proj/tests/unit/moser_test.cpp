#include <gtest/gtest.h>

#include <cmath>

#include "pxlap/moser.hpp"

using namespace pxlap::harness;

TEST(Moser, HalvingSequenceAtThreshold) {
  MoserParams p;  // C = 1, B = 2, beta = 1
  EXPECT_DOUBLE_EQ(p.threshold(), 0.5);
  p.x0 = 0.5;
  const MoserOutcome o = moser_limit_check(p);
  ASSERT_EQ(o.sequence.size(), 51u);
  EXPECT_DOUBLE_EQ(o.sequence[1], 0.25);
  EXPECT_DOUBLE_EQ(o.sequence[2], 0.125);
  EXPECT_DOUBLE_EQ(o.sequence[3], 0.0625);
  EXPECT_TRUE(o.seed_condition);
  EXPECT_TRUE(o.verdict);
}

TEST(Moser, ZeroStaysZero) {
  MoserParams p;
  p.x0 = 0.0;
  const MoserOutcome o = moser_limit_check(p);
  for (double x : o.sequence) EXPECT_EQ(x, 0.0);
  EXPECT_TRUE(o.verdict);
}

TEST(Moser, AboveThresholdIsReportedWithoutClaim) {
  MoserParams p;
  p.x0 = 0.8;
  const MoserOutcome o = moser_limit_check(p);
  EXPECT_FALSE(o.seed_condition);
  EXPECT_FALSE(o.verdict);
  EXPECT_DOUBLE_EQ(o.sequence[1], 0.64);
  EXPECT_DOUBLE_EQ(o.sequence[2], 2.0 * std::pow(0.64, 2));
}

TEST(Moser, GeometricDecayAtThreshold) {
  // x_i = x0 B^(-i/beta) exactly when x0 sits on the threshold
  MoserParams p;
  p.C = 3.0;
  p.B = 4.0;
  p.beta = 0.5;
  p.x0 = p.threshold();
  const MoserOutcome o = moser_limit_check(p);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_NEAR(o.sequence[i], p.x0 * std::pow(p.B, -double(i) / p.beta), 1e-12 * p.x0);
  }
}

TEST(Moser, OverflowIsDivergence) {
  MoserParams p;
  p.C = 10.0;
  p.B = 8.0;
  p.beta = 2.0;
  p.x0 = 5.0;
  const MoserOutcome o = moser_limit_check(p);
  EXPECT_TRUE(o.overflow);
  EXPECT_FALSE(o.verdict);
}

TEST(Moser, InvalidParameters) {
  MoserParams p;
  p.B = 1.0;
  EXPECT_THROW(moser_limit_check(p), std::invalid_argument);
  p = {};
  p.C = 0.0;
  EXPECT_THROW(moser_limit_check(p), std::invalid_argument);
  p = {};
  p.x0 = -1.0;
  EXPECT_THROW(moser_limit_check(p), std::invalid_argument);
}
