#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pxlap/principles.hpp"

using namespace pxlap;
using namespace pxlap::harness;
using oracle::pi;

TEST(Comparison, IdenticalFieldsHold) {
  const GridSpec g = build_grid_1d({0, 1}, 65);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
  const ScalarField u = sample_field("sin(pi*x)", g, Locus::Nodes);
  const PrincipleVerdict v = comparison_check(u, u, monotone_identity(), spec);
  EXPECT_TRUE(v.applicable);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.worst_violation, 0.0);
}

TEST(Comparison, ConstantShiftKeepsOrder) {
  const GridSpec g = build_grid_1d({0, 1}, 65);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
  const ScalarField u1 = sample_field("sin(pi*x)", g, Locus::Nodes);
  const ScalarField u2 = sample_field("sin(pi*x) + 1", g, Locus::Nodes);
  // the operator difference is w_i at every interior node
  const ScalarField L1 = comparison_operator(u1, spec, monotone_identity());
  const ScalarField L2 = comparison_operator(u2, spec, monotone_identity());
  const auto w = lumped_weights(g);
  for (std::size_t n = 1; n + 1 < g.node_count(); ++n) EXPECT_NEAR(L2[n] - L1[n], w[n], 1e-12);
  const PrincipleVerdict v = comparison_check(u1, u2, monotone_identity(), spec);
  EXPECT_TRUE(v.applicable);
  EXPECT_TRUE(v.holds);
}

TEST(Comparison, OrderedForcingGivesOrderedSolutions) {
  for (const char* p : {"2", "2 + x", "1.6 + 0.5*x"}) {
    const GridSpec g = build_grid_1d({0, 1}, 129);
    const ProblemSpec spec = ProblemSpec::from_expressions(g, p, "0", "1");
    const MonotoneMap F = monotone_power(spec.p().p_minus());
    const MonotoneSolve s1 = solve_monotone_problem(spec, F, sample_field("1", g, Locus::Nodes));
    const MonotoneSolve s2 = solve_monotone_problem(spec, F, sample_field("1 + x", g, Locus::Nodes));
    ASSERT_TRUE(s1.converged) << p;
    ASSERT_TRUE(s2.converged) << p;
    const PrincipleVerdict v = comparison_check(s1.u, s2.u, F, spec, 1e-6);
    EXPECT_TRUE(v.applicable) << p << ": " << v.note;
    EXPECT_TRUE(v.holds) << p;
  }
}

TEST(Comparison, ReversedDataIsInapplicableNotFailure) {
  const GridSpec g = build_grid_1d({0, 1}, 65);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2", "0", "1");
  const ScalarField u1 = sample_field("sin(pi*x) + 1", g, Locus::Nodes);
  const ScalarField u2 = sample_field("sin(pi*x)", g, Locus::Nodes);
  const PrincipleVerdict v = comparison_check(u1, u2, monotone_identity(), spec);
  EXPECT_FALSE(v.applicable);
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.note.empty());
}

TEST(Hopf, SineDerivativeIsMinusPi) {
  const GridSpec g = build_grid_1d({0, 1}, 257);
  const ScalarField u = sample_field("sin(pi*x)", g, Locus::Nodes);
  const auto d = outer_normal_derivatives(u);
  ASSERT_EQ(d.size(), 2u);
  for (const auto& x : d) EXPECT_NEAR(x.derivative, -pi, 5e-4);  // O(h^2) one-sided difference
  HopfOptions o;
  o.normalise = false;
  const PrincipleVerdict v = hopf_boundary_check(u, o);
  EXPECT_TRUE(v.holds);
  EXPECT_NEAR(v.worst_violation, -pi + g.spacing(0), 5e-4);
}

TEST(Hopf, ZeroFieldFails) {
  const GridSpec g = build_grid_1d({0, 1}, 33);
  EXPECT_FALSE(hopf_boundary_check(ScalarField::constant(g, 0.0)).holds);
}

TEST(Hopf, SquareExcludesCorners) {
  const GridSpec g = build_grid_2d({0, 1}, {0, 1}, 33, 33);
  const auto d = outer_normal_derivatives(sample_field("sin(pi*x)*sin(pi*y)", g, Locus::Nodes));
  EXPECT_EQ(d.size(), g.boundary_node_count() - 4);
  EXPECT_TRUE(hopf_boundary_check(sample_field("sin(pi*x)*sin(pi*y)", g, Locus::Nodes)).holds);
}

TEST(Hopf, EigenfunctionForVariableExponent) {
  const GridSpec g = build_grid_1d({0, 1}, 257);
  const EigenResult r = solve_first_eigenvalue(ProblemSpec::from_expressions(g, "2+x", "0", "1"), {});
  ASSERT_TRUE(r.converged);
  EXPECT_TRUE(hopf_boundary_check(r.eigenfunction).holds);
}

TEST(Simplicity, CollinearityExamples) {
  const GridSpec g = build_grid_1d({0, 1}, 129);
  const ScalarField s1 = sample_field("sin(pi*x)", g, Locus::Nodes);
  const ScalarField s2 = sample_field("sin(2*pi*x)", g, Locus::Nodes);
  EXPECT_NEAR(collinearity(s1, s1), 1.0, 1e-15);
  EXPECT_NEAR(collinearity(s1, s1.scaled(-3.0)), 1.0, 1e-15);
  EXPECT_NEAR(collinearity(s1, s2), 0.0, 1e-14);
  EXPECT_THROW(collinearity(s1, ScalarField::constant(g, 0.0)), std::invalid_argument);
}

TEST(Simplicity, SameResultAndUnconvergedInput) {
  const GridSpec g = build_grid_1d({0, 1}, 129);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2+x", "0", "1");
  const EigenResult r = solve_first_eigenvalue(spec, {});
  EXPECT_NEAR(simplicity_check(r, r), 1.0, 1e-15);
  EigenResult bad = r;
  bad.converged = false;
  EXPECT_THROW(simplicity_check(r, bad), std::invalid_argument);
}

TEST(Nonexistence, IdentityAndSigns) {
  const GridSpec g = build_grid_1d({0, 1}, 129);
  const ProblemSpec spec = ProblemSpec::from_expressions(g, "2+x", "0", "1");
  const EigenResult r = solve_first_eigenvalue(spec, {});
  const double B = energy_B(r.eigenfunction, spec);

  const NonexistenceCheck at = nonexistence_check(r, r.lambda1, spec);
  EXPECT_NEAR(at.J, 0.0, 1e-8 * energy_A(r.eigenfunction, spec));

  const NonexistenceCheck up = nonexistence_check(r, 1.1 * r.lambda1, spec);
  EXPECT_LT(up.J, 0.0);
  EXPECT_NEAR(up.J, -0.1 * r.lambda1 * B, 1e-10 * 0.1 * r.lambda1 * B);
  EXPECT_TRUE(up.verdict);

  const NonexistenceCheck down = nonexistence_check(r, 0.9 * r.lambda1, spec);
  EXPECT_GT(down.J, 0.0);
  EXPECT_NEAR(down.J, 0.1 * r.lambda1 * B, 1e-10 * 0.1 * r.lambda1 * B);
  EXPECT_TRUE(down.verdict);
}
