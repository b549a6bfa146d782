#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tsgl/defender.hpp"
#include "tsgl/numeric.hpp"

using namespace tsgl;
using namespace tsgl::testing;

namespace {

double dense_grid_min(const Scenario& scn, double v, double step) {
  double best = INFINITY;
  for (double s = step; s <= v; s += step) best = std::min(best, objective(scn, s, v));
  return std::min(best, objective(scn, v, v));
}

}  // namespace

TEST(Scenario, RatioAndValidation) {
  const auto scn = gl1_r5000();
  EXPECT_DOUBLE_EQ(scn.R(), 5000.0);
  EXPECT_DOUBLE_EQ(scn.with_ratio(250.0).R(), 250.0);
  EXPECT_THROW(DefenderParams(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(DefenderParams(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(scn.with_ratio(-1.0), std::invalid_argument);
}

TEST(Objective, Branches) {
  const auto scn = gl1_unit();
  const double v = 0.75;
  const double sp = deterrence_threshold(scn.attacker());
  EXPECT_NEAR(objective(scn, v, v), 10.0 * optimal_breach_probability(scn.attacker(), v), 1e-12);
  EXPECT_NEAR(objective(scn, sp, v), price_of_deterrence(scn.model(), scn.attacker(), v).z_P, 1e-12);
  EXPECT_THROW(objective(scn, 0.8, 0.75), DomainError);
}

TEST(Objective, RecompositionOracle) {
  EXPECT_NEAR(objective(gl1_unit(), 0.5, 0.75), 9.0573049591110366, 1e-10);
}

TEST(Objective, ContinuousAtThreshold) {
  const auto scn = gl1_unit();
  const double sp = deterrence_threshold(scn.attacker());
  EXPECT_NEAR(objective(scn, sp - 1e-10, 0.75), objective(scn, sp + 1e-10, 0.75), 1e-6);
}

TEST(UniversalXi, Values) {
  EXPECT_NEAR(universal_xi(0.5), 0.480453013918201, 1e-14);
  EXPECT_EQ(universal_xi(0.0), 0.0);
  EXPECT_EQ(universal_xi(1.0), 0.0);
  EXPECT_LT(universal_xi(1e-9), 2e-9);
  const auto pk = universal_xi_peak();
  EXPECT_NEAR(pk.s_xi, 0.79681213002002, 1e-7);
  EXPECT_NEAR(pk.xi_hat, 0.647610237891915, 1e-12);
  EXPECT_NEAR(pk.s_xi, 0.8, 0.01);
  EXPECT_NEAR(pk.xi_hat, 0.64, 0.01);
}

TEST(GradientFunction, Examples) {
  const auto gl2 = make_scenario(BreachModel::gl_class2(1.0), 10, 1, 10, 1);
  for (double s : {0.1, 0.5, 0.9}) EXPECT_NEAR(gradient_function(gl2, s), universal_xi(s), 1e-14);
  EXPECT_LT(gradient_function(gl2, 1.0 - 1e-12), 1e-9);
  const auto steep = make_scenario(BreachModel::gl_class1(1.0, 0.9), 10, 1, 10, 1);
  const double slope = (std::log(gradient_function(steep, 1e-6)) - std::log(gradient_function(steep, 1e-7))) /
                       (std::log(1e-6) - std::log(1e-7));
  EXPECT_LT(slope, 0.0);
  EXPECT_GT(gradient_function(steep, 1e-9), gradient_function(steep, 1e-6));
}

TEST(HessianSurrogate, Examples) {
  const auto g1 = make_scenario(BreachModel::gl_class1(1.0, 1.0), 10, 1, 10, 1);
  EXPECT_NEAR(hessian_surrogate(g1, 1e-8), 0.0, 1e-7);
  const auto gl2 = make_scenario(BreachModel::gl_class2(1.0), 10, 1, 10, 1);
  EXPECT_NEAR(hessian_surrogate(gl2, 0.79681213002002), 0.0, 1e-9);
  const auto g2 = make_scenario(BreachModel::gl_class1(1.0, 0.9), 10, 1, 10, 1);
  for (double s : numeric::interior_grid(0.0, 1.0, 200, 1e-6)) EXPECT_LT(hessian_surrogate(g2, s), 0.0);
}

TEST(HessianSurrogate, SignMatchesFiniteDifferenceOfD) {
  for (const auto& scn : {gl1_r5000(), gl2_flip(), make_scenario(quadratic_gamma_model(), 10, 1, 100, 1)}) {
    for (double s : numeric::interior_grid(0.0, 1.0, 97, 1e-3)) {
      const double h = hessian_surrogate(scn, s);
      if (std::fabs(h) < 1e-6) continue;
      const double dD = numeric::central_diff([&](double x) { return gradient_function(scn, x); }, s, 0.0, 1.0);
      EXPECT_EQ(h > 0.0, dD > 0.0) << to_string(scn.model().family()) << " s=" << s;
    }
  }
}

TEST(HessianSurrogate, SeriesBranchIsContinuous) {
  const auto scn = gl1_r5000();
  const double lo = 0.9999999e-4;
  const double hi = 1.0000001e-4;
  EXPECT_NEAR(hessian_surrogate(scn, lo) * lo, hessian_surrogate(scn, hi) * hi, 1e-10);
}

TEST(ClassifyGradientShape, Examples) {
  const auto a = classify_gradient_shape(gl1_r5000());
  EXPECT_EQ(a.kind, ShapeKind::InvertedU);
  EXPECT_NEAR(a.s_hat, 0.466406384093426, 1e-9);
  EXPECT_NEAR(a.s_hat, 0.47, 0.01);

  const auto b = classify_gradient_shape(gl2_flip());
  EXPECT_EQ(b.kind, ShapeKind::InvertedU);
  EXPECT_NEAR(b.s_hat, 0.79681213002002, 1e-8);
  EXPECT_NEAR(b.D_hat * 1e-4, 0.647610237891915, 1e-10);

  const auto c = classify_gradient_shape(make_scenario(BreachModel::gl_class1(1e-4, 0.9), 10, 1, 10, 1));
  EXPECT_EQ(c.kind, ShapeKind::StrictlyDecreasing);
  EXPECT_EQ(c.s_hat, 0.0);
  EXPECT_TRUE(std::isinf(c.D_hat));

  const auto d = classify_gradient_shape(make_scenario(BreachModel::gl_class1(2.0, 1.0), 10, 1, 10, 1));
  EXPECT_EQ(d.kind, ShapeKind::InvertedU);
  EXPECT_EQ(d.s_hat, 0.0);
  EXPECT_NEAR(d.D_hat, 0.5, 1e-6);
}

TEST(ClassifyGradientShape, RejectsNonGammaProfiles) {
  const auto scn = make_scenario(BreachModel::custom_polynomial(1.0, {0.9, -0.5}), 10, 1, 10, 1);
  EXPECT_THROW(classify_gradient_shape(scn), ClassificationError);
}

TEST(ClassifyGradientShape, ShapeInvariantOnGrid) {
  for (const auto& scn : {gl1_r5000(), gl2_flip(), make_scenario(quadratic_gamma_model(), 10, 1, 100, 1),
                          make_scenario(BreachModel::gl_class1(1.0, 0.8), 10, 1, 100, 1)}) {
    const auto shape = classify_gradient_shape(scn);
    const auto grid = numeric::interior_grid(0.0, 1.0, 400, 1e-4);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double a = gradient_function(scn, grid[i - 1]);
      const double b = gradient_function(scn, grid[i]);
      if (grid[i] <= shape.s_hat) {
        EXPECT_GE(b, a);
      } else if (grid[i - 1] >= shape.s_hat) {
        EXPECT_LE(b, a);
      }
    }
  }
}

TEST(VHat, Examples) {
  const auto gl2 = make_scenario(BreachModel::gl_class2(1e-4), 1, 1, 1e4, 1);
  EXPECT_NEAR(v_hat(gl2).value, 0.523294833857222, 1e-8);
  EXPECT_FALSE(v_hat(gl2).clamped);

  EXPECT_NEAR(v_hat(gl1_r5000()).value, 0.579665943081474, 1e-8);

  // R = D_hat gives v_hat = 1.
  const auto base = gl1_r5000();
  const double dhat = classify_gradient_shape(base).D_hat;
  EXPECT_NEAR(v_hat(base.with_ratio(dhat)).value, 1.0, 1e-9);
  EXPECT_TRUE(v_hat(base.with_ratio(2.0 * dhat)).clamped);

  EXPECT_EQ(v_hat(make_scenario(BreachModel::gl_class1(1e-4, 0.9), 10, 1, 10, 1)).value, 0.0);
}

TEST(StationaryPoints, AtAndBelowVHat) {
  const DefenderSolver solver(gl1_r5000());
  const double vh = solver.v_hat().value;
  const auto at = solver.stationary_points(vh);
  ASSERT_TRUE(at.s1 && at.s2);
  EXPECT_NEAR(*at.s1, solver.shape().s_hat, 1e-5);
  EXPECT_NEAR(*at.s2, solver.shape().s_hat, 1e-5);
  const auto below = solver.stationary_points(vh - 1e-3);
  EXPECT_FALSE(below.s1);
  EXPECT_FALSE(below.s2);
}

TEST(StationaryPoints, MatchGridRootOracle) {
  const auto sp = stationary_points(gl1_r5000(), 0.75);
  ASSERT_TRUE(sp.s1 && sp.s2);
  EXPECT_NEAR(*sp.s2, 0.0247529547835427, 1e-8);
  EXPECT_NEAR(*sp.s1, 0.864759650530951, 1e-8);
}

TEST(StationaryPoints, StrictlyDecreasingHasNoS2) {
  const auto scn = make_scenario(BreachModel::gl_class1(1e-3, 0.9), 10, 1, 1000, 1);
  const auto sp = stationary_points(scn, 0.5);
  EXPECT_TRUE(sp.s1.has_value());
  EXPECT_FALSE(sp.s2.has_value());
}

TEST(StationaryPoints, MonotoneBranches) {
  const DefenderSolver solver(gl1_r5000());
  double prev1 = 0.0;
  double prev2 = 1.0;
  for (double v : numeric::linspace(solver.v_hat().value + 1e-6, 0.999, 200)) {
    const auto sp = solver.stationary_points(v);
    ASSERT_TRUE(sp.s1 && sp.s2);
    EXPECT_GE(*sp.s1, prev1 - 1e-10);
    EXPECT_LE(*sp.s2, prev2 + 1e-10);
    prev1 = *sp.s1;
    prev2 = *sp.s2;
  }
}

TEST(SolveDefender, Gl2Flip) {
  const DefenderSolver solver(gl2_flip());
  Decision prev = solver.solve(0.01).decision;
  int flips = 0;
  double flip_v = 0.0;
  for (double v : numeric::linspace(0.01, 0.99, 981)) {
    const auto d = solver.solve(v).decision;
    if (d != prev) {
      ++flips;
      flip_v = v;
      EXPECT_EQ(prev, Decision::AllIn);
      EXPECT_EQ(d, Decision::None);
    }
    prev = d;
  }
  EXPECT_EQ(flips, 1);
  EXPECT_NEAR(flip_v, 0.797114556024394, 1e-3);
}

TEST(SolveDefender, BelowThreshold) {
  const auto scn = gl1_unit();
  const auto sol = solve_defender(scn, 0.05);
  EXPECT_EQ(sol.decision, Decision::AllIn);
  EXPECT_EQ(sol.z_star, 0.0);
  EXPECT_EQ(sol.phi_star, 0.0);
}

TEST(SolveDefender, Gl1R5000AtHighV) {
  const auto scn = gl1_r5000();
  const auto sol = solve_defender(scn, 0.95);
  EXPECT_TRUE(sol.decision == Decision::AllIn || sol.decision == Decision::Some);
  EXPECT_EQ(sol.decision, Decision::Some);
  // Frozen from a 1e-5 step numpy grid.
  EXPECT_NEAR(sol.phi_star, 98314.92777224297, 1e-6 * scn.defender().loss);
}

TEST(SolveDefender, DomainErrors) {
  EXPECT_THROW(solve_defender(gl1_unit(), 0.0), DomainError);
  EXPECT_THROW(solve_defender(gl1_unit(), 1.0), DomainError);
}

TEST(SolveDefender, SolutionInvariants) {
  for (const auto& scn : {gl1_r5000(), gl2_flip(), gl1_unit(), make_scenario(quadratic_gamma_model(), 20, 1, 3e4, 1)}) {
    const DefenderSolver solver(scn);
    for (double v : numeric::linspace(0.02, 0.98, 97)) {
      const auto sol = solver.solve(v);
      const double L = scn.defender().loss;
      if (v > sol.s_P) {
        switch (sol.decision) {
          case Decision::AllIn: EXPECT_EQ(sol.s_star, sol.s_P); break;
          case Decision::Some: ASSERT_TRUE(sol.s1); EXPECT_EQ(sol.s_star, *sol.s1); break;
          case Decision::None: EXPECT_EQ(sol.s_star, v); EXPECT_EQ(sol.z_star, 0.0); break;
        }
        EXPECT_NEAR(sol.phi_star, objective(scn, sol.s_star, v), 1e-9 * L);
      }
      EXPECT_LE(sol.phi_star, L * optimal_breach_probability(scn.attacker(), v) + 1e-9 * L);
      EXPECT_GE(sol.z_star, 0.0);
    }
  }
}

TEST(SolveDefender, MatchesDenseGridMinimum) {
  for (const auto& scn : {gl1_r5000(), gl2_flip(), make_scenario(quadratic_gamma_model(), 20, 1, 3e4, 1)}) {
    for (double v : {0.3, 0.6, 0.85, 0.97}) {
      const auto sol = solve_defender(scn, v);
      EXPECT_LE(sol.phi_star, dense_grid_min(scn, v, 1e-5) + 1e-6 * scn.defender().loss) << v;
    }
  }
}

TEST(SolveDefender, IntervalBoundariesGoToLowerInterval) {
  const DefenderSolver solver(gl1_r5000());
  EXPECT_EQ(solver.decision_interval(solver.v_hat().value), DecisionInterval::DI1);
}

TEST(SignPattern, PhiDerivativeAroundStationaryPoints) {
  const auto scn = gl1_r5000();
  const DefenderSolver solver(scn);
  for (double v : {0.6, 0.75, 0.9, 0.97}) {
    const auto sp = solver.stationary_points(v);
    ASSERT_TRUE(sp.s1 && sp.s2);
    auto phi_s = [&](double s) {
      return numeric::central_diff([&](double x) { return objective(scn, x, v); }, s, solver.s_P(), v);
    };
    auto check = [&](double lo, double hi, int sign) {
      if (!(hi - lo > 1e-6)) return;
      for (double s : numeric::interior_grid(lo, hi, 32, 1e-3 * (hi - lo))) {
        const double d = phi_s(s);
        EXPECT_EQ(d > 0.0 ? 1 : -1, sign) << "v=" << v << " s=" << s << " dphi=" << d;
      }
    };
    const double sP = solver.s_P();
    check(sP, std::min(*sp.s2, v), 1);
    check(std::max(sP, *sp.s2), std::min(*sp.s1, v), -1);
    check(std::max(sP, *sp.s1), v, 1);
  }
}
