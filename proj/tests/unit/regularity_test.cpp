#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pxlap/eigen_solver.hpp"
#include "pxlap/regularity.hpp"

using namespace pxlap;
using namespace pxlap::harness;
using oracle::pi;

TEST(Caccioppoli, ConstantFieldHasZeroRatio) {
  const GridSpec g = build_grid_1d({0, 1}, 129);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
  const double levels[] = {0.25, 0.5};
  const RadiusTriple radii[] = {{0.1, 0.2, 0.3}};
  const ConstantEstimate e =
      caccioppoli_constant(ScalarField::constant(g, 1.0), spec, {0.5, 0.0}, levels, radii);
  EXPECT_EQ(e.estimated_c, 0.0);
  for (const auto& w : e.witnesses) EXPECT_EQ(w.lhs, 0.0);
}

TEST(Caccioppoli, SineAgainstDirectQuadrature) {
  const GridSpec g = build_grid_1d({0, 1}, 2049);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
  const double levels[] = {0.5};
  const RadiusTriple radii[] = {{0.1, 0.2, 0.3}};
  const ConstantEstimate e =
      caccioppoli_constant(sample_field("sin(pi*x)", g, Locus::Nodes), spec, {0.5, 0.0}, levels, radii);
  ASSERT_EQ(e.witnesses.size(), 1u);
  // sin(pi x) > 0.5 on (1/6, 5/6), which holds every ball here
  const double lhs = oracle::integrate([](double x) { return pi * pi * std::pow(std::cos(pi * x), 2); }, 0.4, 0.6);
  const double rhs =
      oracle::integrate([](double x) { return std::pow((std::sin(pi * x) - 0.5) / 0.1, 2); }, 0.3, 0.7) +
      (1 + 0.25) * 0.6;
  EXPECT_NEAR(e.witnesses[0].lhs, lhs, 5e-3 * lhs);
  EXPECT_NEAR(e.witnesses[0].rhs, rhs, 5e-3 * rhs);
  EXPECT_NEAR(e.estimated_c, lhs / rhs, 1e-2 * lhs / rhs);
  EXPECT_TRUE(e.finite());
}

TEST(Caccioppoli, RejectsBadRadii) {
  const GridSpec g = build_grid_1d({0, 1}, 65);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
  const ScalarField u = sample_field("sin(pi*x)", g, Locus::Nodes);
  const double levels[] = {0.5};
  const RadiusTriple bad[] = {{0.2, 0.1, 0.3}};
  EXPECT_THROW(caccioppoli_constant(u, spec, {0.5, 0.0}, levels, bad), std::invalid_argument);
  const double zero_level[] = {0.0};
  const RadiusTriple ok[] = {{0.1, 0.2, 0.3}};
  EXPECT_THROW(caccioppoli_constant(u, spec, {0.5, 0.0}, zero_level, ok), std::invalid_argument);
}

TEST(Caccioppoli, StableAcrossResolutionOnEigenfunction) {
  const double levels[] = {0.25, 0.5, 0.75};
  const RadiusTriple radii[] = {{0.1, 0.2, 0.3}, {0.15, 0.25, 0.4}};
  ConstantEstimate est[2];
  int i = 0;
  for (int n : {257, 513}) {
    const GridSpec g = build_grid_1d({0, 1}, n);
    const ProblemSpec spec = ProblemSpec::from_expressions(g, "2+x", "0", "1");
    const EigenResult r = solve_first_eigenvalue(spec, {});
    ASSERT_TRUE(r.converged);
    const ScalarField u = r.eigenfunction.scaled(1.0 / r.eigenfunction.max_abs());
    est[i++] = caccioppoli_constant(u, spec, {0.5, 0.0}, levels, radii);
  }
  EXPECT_EQ(est[0].witnesses.size(), 6u);
  compare_resolutions(est[0], est[1]);
  EXPECT_TRUE(est[0].stable_across_resolutions);
  EXPECT_LT(est[0].resolution_ratio, 4.0);
}

TEST(Oscillation, LinearFieldHasExponentOne) {
  const GridSpec g = build_grid_1d({0, 1}, 129);
  const double radii[] = {0.25, 0.125, 0.0625, 0.03125};
  const OscillationProfile o = oscillation_profile(sample_field("x", g, Locus::Nodes), {0.5, 0.0}, radii, 1.0);
  ASSERT_TRUE(o.exponent_fitted);
  EXPECT_NEAR(o.fitted_exponent, 1.0, 1e-10);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(o.oscillations[i], radii[i], 1e-14);
  EXPECT_NEAR(o.estimate.estimated_c, 1.0, 1e-14);
}

TEST(Oscillation, ConstantFieldSkipsFit) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 33, 33);
  const double radii[] = {0.25, 0.125, 0.0625};
  const OscillationProfile o =
      oscillation_profile(ScalarField::constant(g, 3.0), {0.5, 0.5}, radii, 0.5);
  EXPECT_FALSE(o.exponent_fitted);
  EXPECT_EQ(o.estimate.estimated_c, 0.0);
  for (double v : o.oscillations) EXPECT_EQ(v, 0.0);
}

TEST(Oscillation, NeedsThreeRadii) {
  const GridSpec g = build_grid_1d({0, 1}, 33);
  const double radii[] = {0.25, 0.125};
  EXPECT_THROW(oscillation_profile(sample_field("x", g, Locus::Nodes), {0.5, 0.0}, radii, 1.0),
               std::invalid_argument);
}

TEST(Oscillation, SmoothEigenfunctionExponent) {
  const GridSpec g = build_grid_1d({0, 1}, 513);
  const EigenResult r = solve_first_eigenvalue(ProblemSpec::from_expressions(g, "2", "0", "1"), {});
  const double radii[] = {0.25, 0.125, 0.0625, 0.03125};
  const OscillationProfile o = oscillation_profile(r.eigenfunction, {0.5, 0.0}, radii, 1.0);
  ASSERT_TRUE(o.exponent_fitted);
  EXPECT_GE(o.fitted_exponent, 0.9);
}

TEST(Harnack, BetaRoots) {
  EXPECT_NEAR(harnack_beta(1), (std::sqrt(5.0) - 1) / 2, 1e-15);
  const double b2 = harnack_beta(2);
  EXPECT_NEAR(b2 * (b2 + 1), 0.5, 1e-15);
}

TEST(Harnack, ZeroFieldPassesVacuously) {
  const GridSpec g = build_grid_1d({0, 1}, 65);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
  const HarnackCheck h = harnack_bound_check(ScalarField::constant(g, 0.0), spec, {0.5, 0.0}, 0.25);
  EXPECT_EQ(h.lhs, 0.0);
  EXPECT_EQ(h.estimate.estimated_c, 0.0);
}

TEST(Harnack, EigenfunctionRatioStableWithinTwo) {
  double c[2];
  int i = 0;
  for (int n : {257, 513}) {
    const GridSpec g = build_grid_1d({0, 1}, n);
    const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
    const EigenResult r = solve_first_eigenvalue(spec, {});
    const HarnackCheck h = harnack_bound_check(r.eigenfunction, spec, {0.5, 0.0}, 0.25);
    EXPECT_TRUE(h.estimate.finite());
    EXPECT_NEAR(h.beta, (std::sqrt(5.0) - 1) / 2, 1e-15);
    c[i++] = h.estimate.estimated_c;
  }
  EXPECT_LT(std::max(c[0], c[1]) / std::min(c[0], c[1]), 2.0);
}

TEST(SobolevPoincare, ZeroWitnessNeedsNoConstants) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 33, 33);
  const ExponentField a = validate_exponent(sample_field("2", g, Locus::QuadraturePoints));
  const ScalarField w[] = {ScalarField::constant(g, 0.0)};
  const SpInequalityCheck s = sp_inequality_check(w, a, {0.5, 0.5}, 0.4);
  EXPECT_TRUE(s.holds);
  EXPECT_EQ(s.c, 0.0);
  EXPECT_EQ(s.chi, 0.0);
  EXPECT_EQ(s.witnesses[0].lhs, 0.0);
}

TEST(SobolevPoincare, BumpHoldsAndSupportBoundedByBall) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 65, 65);
  const ExponentField a = validate_exponent(sample_field("2", g, Locus::QuadraturePoints));
  const ScalarField w[] = {ScalarField::constant(g, 1.0), sample_field("1 + x*y", g, Locus::Nodes)};
  const double R = 0.4;
  const SpInequalityCheck s = sp_inequality_check(w, a, {0.5, 0.5}, R);
  EXPECT_TRUE(s.holds);
  EXPECT_TRUE(std::isfinite(s.c));
  EXPECT_TRUE(std::isfinite(s.chi));
  const double ball = level_set(ScalarField::constant(g, 1.0), 0.0, {{0.5, 0.5}, R}).ball_measure;
  for (const auto& x : s.witnesses) {
    EXPECT_LE(x.support_term, ball);
    EXPECT_LE(x.lhs, s.c * x.gradient_term + s.chi * x.support_term + 1e-12);
  }
}

TEST(SobolevPoincare, OneDimensionalGridRejected) {
  const GridSpec g = build_grid_1d({0, 1}, 33);
  const ExponentField a = validate_exponent(sample_field("2", g, Locus::QuadraturePoints));
  const ScalarField w[] = {ScalarField::constant(g, 1.0)};
  EXPECT_THROW(sp_inequality_check(w, a, {0.5, 0.0}, 0.25), std::invalid_argument);
}

TEST(ConstantEstimate, RatioBookkeeping) {
  ConstantEstimate e;
  e.add({{"k", 1}}, 0.0, 0.0);
  e.add({{"k", 2}}, 2.0, 4.0);
  e.add({{"k", 3}}, 3.0, 2.0);
  EXPECT_EQ(e.estimated_c, 1.5);
  EXPECT_EQ(e.witnesses[0].ratio, 0.0);
  EXPECT_TRUE(e.finite());
  ConstantEstimate f;
  f.add({}, 4.5, 1.0);
  compare_resolutions(e, f, 4.0);
  EXPECT_EQ(e.resolution_ratio, 3.0);
  EXPECT_TRUE(e.stable_across_resolutions);
  compare_resolutions(e, f, 2.0);
  EXPECT_FALSE(e.stable_across_resolutions);
}
