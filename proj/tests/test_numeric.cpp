#include <gtest/gtest.h>

#include <cmath>

#include "tsgl/numeric.hpp"

using namespace tsgl::numeric;

TEST(Bisect, FindsRoot) {
  const auto r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-12);
  EXPECT_GT(r.iterations, 30u);
}

TEST(Bisect, NoSignChange) {
  const auto r = bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(std::isnan(r.root));
}

TEST(Bisect, EndpointRootsAndIterationCap) {
  EXPECT_EQ(bisect([](double x) { return x; }, 0.0, 1.0).root, 0.0);
  EXPECT_EQ(bisect([](double x) { return x - 1.0; }, 0.0, 1.0).root, 1.0);
  const auto capped = bisect([](double x) { return x - 0.3; }, 0.0, 1.0, 1e-15, 5);
  EXPECT_FALSE(capped.converged);
  EXPECT_EQ(capped.iterations, 5u);
  EXPECT_NEAR(capped.root, 0.3, 1.0 / 32.0);
}

TEST(GoldenSection, InteriorAndEndpointMaxima) {
  const auto in = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(in.x, 0.3, 1e-8);
  const auto edge = golden_section_max([](double x) { return x; }, 0.0, 1.0);
  EXPECT_EQ(edge.x, 1.0);
}

TEST(ScanAndRefine, PicksGlobalPeakOfMultimodal) {
  auto f = [](double x) { return std::sin(5.0 * x) + 0.5 * x; };
  const auto r = scan_and_refine_max(f, linspace(0.0, 3.0, 301), 1e-12);
  // Local maxima at 5x = acos(-0.1) + 2 pi k; the k=2 peak is highest on [0, 3].
  EXPECT_NEAR(r.x, (std::acos(-0.1) + 4.0 * M_PI) / 5.0, 1e-6);
}

TEST(FiniteDifferences, StepRuleAndClamping) {
  EXPECT_EQ(fd_step(0.0), 1e-6);
  EXPECT_DOUBLE_EQ(fd_step(100.0), 1e-2);
  EXPECT_NEAR(central_diff([](double x) { return std::exp(x); }, 1.0), std::exp(1.0), 1e-7);
  EXPECT_NEAR(central_diff2([](double x) { return x * x * x; }, 2.0), 12.0, 1e-5);
  EXPECT_NEAR(richardson_diff([](double x) { return std::log(x); }, 1e-3), 1e3, 1e-6);
  // Near the lower limit the stencil shifts inside the domain.
  auto sqrt_checked = [](double x) {
    EXPECT_GE(x, 0.0);
    return std::sqrt(x);
  };
  EXPECT_TRUE(std::isfinite(central_diff(sqrt_checked, 0.0, 0.0, 1.0)));
}

TEST(Simpson, Polynomials) {
  EXPECT_NEAR(simpson([](double x) { return x * x * x; }, 0.0, 2.0, 2), 4.0, 1e-14);
  EXPECT_NEAR(simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 101), 2.0, 1e-7);
}

TEST(Grids, LinspaceAndInterior) {
  const auto g = linspace(0.0, 1.0, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_DOUBLE_EQ(g[2], 0.5);
  const auto in = interior_grid(0.0, 1.0, 10, 1e-4);
  EXPECT_DOUBLE_EQ(in.front(), 1e-4);
  EXPECT_DOUBLE_EQ(in.back(), 1.0 - 1e-4);
}
