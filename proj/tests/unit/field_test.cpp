#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pxlap/field.hpp"

using namespace pxlap;

TEST(SampleField, SineAtFiveNodes) {
  const GridSpec g = build_grid_1d({0, 1}, 5);
  const ScalarField u = sample_field("sin(pi*x)", g, Locus::Nodes);
  const double expected[] = {0.0, std::sqrt(2.0) / 2, 1.0, std::sqrt(2.0) / 2, 0.0};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(u[i], expected[i], 1e-15);
}

TEST(SampleField, ZeroExpressionGivesZeroField) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 2}, 4, 6);
  const ScalarField u = sample_field("0", g, Locus::Nodes);
  EXPECT_EQ(u.size(), g.node_count());
  EXPECT_EQ(u.max_abs(), 0.0);
}

TEST(SampleField, QuadraturePointsAreMidpoints) {
  const GridSpec g = build_grid_1d({0, 1}, 9);
  const ScalarField p = sample_field("2+x", g, Locus::QuadraturePoints);
  ASSERT_EQ(p.size(), 8u);
  for (std::size_t c = 0; c < 8; ++c) EXPECT_DOUBLE_EQ(p[c], 2.0 + (c + 0.5) / 8.0);
}

TEST(SampleField, ErrorsOnBadInput) {
  const GridSpec g = build_grid_1d({0, 1}, 5);
  EXPECT_THROW(sample_field("x +", g, Locus::Nodes), ExpressionError);
  EXPECT_THROW(sample_field("y", g, Locus::Nodes), ExpressionError);
  EXPECT_THROW(sample_field("1/x", g, Locus::Nodes), std::domain_error);
  EXPECT_THROW(sample_field("log(x - 2)", g, Locus::Nodes), std::domain_error);
}

TEST(ValidateExponent, BoundsOfTwoPlusX) {
  const GridSpec g = build_grid_1d({0, 1}, 257);
  const ExponentField p = validate_exponent(sample_field("2+x", g, Locus::QuadraturePoints));
  // midpoints sit half a cell inside the endpoints
  EXPECT_NEAR(p.p_minus(), 2.0, 1e-2);
  EXPECT_NEAR(p.p_plus(), 3.0, 1e-2);
  EXPECT_NEAR(p.lipschitz_estimate(), 1.0, 1e-12);
  EXPECT_FALSE(p.lipschitz_flagged());
  for (std::size_t c = 0; c < p.samples().size(); ++c) {
    EXPECT_LE(p.p_minus(), p[c]);
    EXPECT_GE(p.p_plus(), p[c]);
  }
}

TEST(ValidateExponent, RejectsOneAndNonFinite) {
  const GridSpec g = build_grid_1d({0, 1}, 9);
  EXPECT_THROW(validate_exponent(sample_field("1", g, Locus::QuadraturePoints)), std::invalid_argument);
  EXPECT_THROW(validate_exponent(sample_field("0.5 + x", g, Locus::QuadraturePoints)), std::invalid_argument);
  EXPECT_THROW(validate_exponent(sample_field("2", g, Locus::Nodes)), std::invalid_argument);
}

TEST(ValidateExponent, UnitJumpIsFlagged) {
  const GridSpec g = build_grid_1d({0, 1}, 129);  // h = 1/128
  const ExponentField p = validate_exponent(sample_field("2 + step(x - 0.5)", g, Locus::QuadraturePoints));
  EXPECT_GE(p.lipschitz_estimate(), 128.0);
  EXPECT_DOUBLE_EQ(p.max_jump(), 1.0);
  EXPECT_TRUE(p.lipschitz_flagged());
}

TEST(DiscreteGradient, AffineIsExact) {
  const GridSpec g = build_grid_1d({0, 1}, 33);
  const VectorField d = discrete_gradient(sample_field("3*x", g, Locus::Nodes));
  for (std::size_t c = 0; c < d.size(); ++c) EXPECT_NEAR(d.component(0)[c], 3.0, 1e-13);

  const GridSpec s = build_grid_2d({0, 1}, {0, 2}, 9, 17);
  const VectorField d2 = discrete_gradient(sample_field("2*x - 5*y + 1", s, Locus::Nodes));
  for (std::size_t c = 0; c < d2.size(); ++c) {
    EXPECT_NEAR(d2.component(0)[c], 2.0, 1e-12);
    EXPECT_NEAR(d2.component(1)[c], -5.0, 1e-12);
  }
}

TEST(DiscreteGradient, ConstantHasZeroGradient) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 5, 5);
  const VectorField d = discrete_gradient(ScalarField::constant(g, 7.0));
  for (std::size_t c = 0; c < d.size(); ++c) EXPECT_EQ(d.magnitude(c), 0.0);
}

TEST(DiscreteGradient, SineMatchesDerivativeAtMidpoints) {
  const GridSpec g = build_grid_1d({0, 1}, 257);
  const VectorField d = discrete_gradient(sample_field("sin(pi*x)", g, Locus::Nodes));
  double worst = 0.0;
  for (std::size_t c = 0; c < d.size(); ++c) {
    const double x = g.cell_midpoint(c)[0];
    worst = std::max(worst, std::abs(d.component(0)[c] - oracle::pi * std::cos(oracle::pi * x)));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(Coefficients, ValidatesSigns) {
  const GridSpec g = build_grid_1d({0, 1}, 9);
  auto q = [&](const char* e) { return sample_field(e, g, Locus::QuadraturePoints); };
  EXPECT_NO_THROW(make_coefficients(q("0"), q("1 - 2*x")));
  EXPECT_THROW(make_coefficients(q("-1"), q("1")), std::invalid_argument);
  EXPECT_THROW(make_coefficients(q("0"), q("-1")), std::invalid_argument);
  EXPECT_DOUBLE_EQ(make_coefficients(q("0"), q("3")).b_sup(), 3.0);
}

TEST(ScalarField, RejectsNonFiniteAndLengthMismatch) {
  const GridSpec g = build_grid_1d({0, 1}, 5);
  EXPECT_THROW(ScalarField(g, Locus::Nodes, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(ScalarField(g, Locus::Nodes, {0, 1, NAN, 1, 0}), std::invalid_argument);
}

TEST(ScalarField, CsvHasHeaderAndOneRowPerNode) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 3, 4);
  std::ostringstream os;
  write_csv(os, sample_field("x + 0.5*y", g, Locus::Nodes));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,value");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.find(';'), std::string::npos);
  }
  EXPECT_EQ(rows, 12);
}

TEST(DirichletHelpers, ZeroesBoundary) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 5, 5);
  const ScalarField u = with_dirichlet_zero(ScalarField::constant(g, 2.0));
  EXPECT_EQ(boundary_max_abs(u), 0.0);
  EXPECT_EQ(u[g.node_index(2, 2)], 2.0);
}
