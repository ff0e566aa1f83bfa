#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pxlap/modular.hpp"

using namespace pxlap;

namespace {
ExponentField exponent(const GridSpec& g, const char* e) {
  return validate_exponent(sample_field(e, g, Locus::QuadraturePoints));
}
}  // namespace

TEST(Modular, ZeroField) {
  const GridSpec g = build_grid_1d({0, 1}, 17);
  EXPECT_EQ(modular(ScalarField::constant(g, 0.0), exponent(g, "2+x")).value, 0.0);
}

TEST(Modular, ConstantExponentClosedForm) {
  const GridSpec g = build_grid_1d({0, 1}, 17);
  EXPECT_NEAR(modular(ScalarField::constant(g, 2.0), exponent(g, "3")).value, 8.0, 1e-13);
}

TEST(Modular, VariableExponentAgainstQuadratureOracle) {
  const double exact = oracle::integrate([](double x) { return std::pow(x, 2.0 + x); }, 0.0, 1.0);
  double err_prev = 0.0;
  for (int n : {257, 513, 1025}) {
    const GridSpec g = build_grid_1d({0, 1}, n);
    const double m = modular(sample_field("x", g, Locus::Nodes), exponent(g, "2+x")).value;
    const double err = std::abs(m - exact);
    EXPECT_LT(err / exact, 2e-5) << n;
    if (err_prev > 0.0) EXPECT_NEAR(err_prev / err, 4.0, 0.1);  // midpoint rule is O(h^2)
    err_prev = err;
  }
}

TEST(Modular, GradientUsesEuclideanMagnitude) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 9, 9);
  const VectorField d = discrete_gradient(sample_field("3*x + 4*y", g, Locus::Nodes));
  EXPECT_NEAR(modular(d, exponent(g, "2")).value, 25.0, 1e-12);
}

TEST(Modular, GridMismatchThrows) {
  const GridSpec g = build_grid_1d({0, 1}, 17);
  const GridSpec h = build_grid_1d({0, 1}, 33);
  EXPECT_THROW(modular(ScalarField::constant(g, 1.0), exponent(h, "2")), std::invalid_argument);
}

TEST(Luxemburg, ConstantExponentClosedForm) {
  const GridSpec g = build_grid_1d({0, 1}, 17);
  EXPECT_NEAR(luxemburg_norm(ScalarField::constant(g, 2.0), exponent(g, "3")).value, 2.0, 1e-11);
  EXPECT_EQ(luxemburg_norm(ScalarField::constant(g, 0.0), exponent(g, "3")).value, 0.0);
}

TEST(Luxemburg, PiecewiseExponentQuadraticRoot) {
  // half the domain at p = 2, half at p = 4: s/2 + s^2/2 = 1 with s = (2/lambda)^2 gives s = 1
  const GridSpec g = build_grid_1d({0, 1}, 65);
  const LuxemburgNorm n = luxemburg_norm(ScalarField::constant(g, 2.0), exponent(g, "2 + 2*step(x - 0.5)"));
  EXPECT_NEAR(n.value, 2.0, 1e-11);
  EXPECT_LE(n.bracket_lo, n.value);
  EXPECT_GE(n.bracket_hi, n.value);
  EXPECT_GT(n.iterations, 0);
}

TEST(Sobolev, LinearFieldAtPTwo) {
  const GridSpec g = build_grid_1d({0, 1}, 1025);
  const double expected = 1.0 / std::sqrt(3.0) + 1.0;
  EXPECT_NEAR(sobolev_norm(sample_field("x", g, Locus::Nodes), exponent(g, "2")), expected, 1e-6);
  EXPECT_EQ(sobolev_norm(ScalarField::constant(g, 0.0), exponent(g, "2")), 0.0);
}

TEST(Sobolev, Homogeneous) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 17, 17);
  const ScalarField u = sample_field("sin(pi*x)*sin(pi*y)*(1+x)", g, Locus::Nodes);
  const ExponentField p = exponent(g, "1.5 + x*y");
  const double base = sobolev_norm(u, p);
  for (double t : {-3.0, 0.5, 10.0}) EXPECT_NEAR(sobolev_norm(u.scaled(t), p), std::abs(t) * base, 1e-9 * base);
}

TEST(Poincare, OneDimensionalApproachesInversePiSquared) {
  const GridSpec g = build_grid_1d({0, 1}, 257);
  const PoincareEstimate e = poincare_constant_estimate(g, exponent(g, "2"), 16, 42);
  EXPECT_NEAR(e.constant, 1.0 / (oracle::pi * oracle::pi), 1e-4);
  for (double r : e.ratios) EXPECT_LE(r, e.constant);
}

TEST(Poincare, ProductOfSinesOnSquare) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 65, 65);
  const PoincareEstimate e = poincare_constant_estimate(g, exponent(g, "2"), 1, 7);
  EXPECT_NEAR(e.constant, 1.0 / (2 * oracle::pi * oracle::pi), 1e-4);
}

TEST(Poincare, ExtraSamplesAreIncluded) {
  const GridSpec g = build_grid_1d({0, 1}, 129);
  const ExponentField p = exponent(g, "2");
  const ScalarField extra[] = {sample_field("sin(pi*x)", g, Locus::Nodes)};
  const PoincareEstimate e = poincare_constant_estimate(g, p, 3, 1, extra);
  EXPECT_EQ(e.ratios.size() + e.skipped, 4u);
}
