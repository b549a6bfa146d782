#pragma once

#include <span>
#include <vector>

#include "tsgl/defender.hpp"

namespace tsgl {

/// One-sided optimum: the defender faces a breach with probability S(z, v), no strategic attacker.
struct GlBaselineSolution {
  double z_gl = 0.0;
  double expected_loss = 0.0;  // L S(z_gl, v) + d z_gl
  double bound_ratio = 0.0;    // d z_gl / (v L), at most 1/e for log-convex S
};

/*
 * Minimises L S(z, v) + d z over z >= 0 through -L S_z(z, v) = d, using that
 * -S_z decreases in z. Returns z = 0 when the marginal benefit at zero effort
 * already falls short of d.
 */
GlBaselineSolution solve_gordon_loeb(const Scenario& scn, double v);

struct ComparisonRow {
  double v = 0.0;
  double z_gl = 0.0;
  double z_two_sided = 0.0;
  Decision decision = Decision::AllIn;
  bool two_sided_exceeds = false;
};

std::vector<ComparisonRow> compare_models(const Scenario& scn, std::span<const double> v_grid);

}  // namespace tsgl
