#include "tsgl/baseline.hpp"

#include <cmath>
#include <stdexcept>

#include "tsgl/numeric.hpp"

namespace tsgl {

GlBaselineSolution solve_gordon_loeb(const Scenario& scn, double v) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("solve_gordon_loeb: v must lie in (0, 1)");
  const auto& model = scn.model();
  const double L = scn.defender().loss;
  const double d = scn.defender().unit_cost;

  auto excess = [&](double z) { return -L * model.breach_slope(z, v) - d; };

  GlBaselineSolution out;
  if (excess(0.0) > 0.0) {
    double hi = 1.0 / model.alpha();
    for (int i = 0; i < 2000 && excess(hi) > 0.0; ++i) hi *= 2.0;
    out.z_gl = numeric::bisect(excess, 0.0, hi, 1e-14 * std::max(1.0, hi), 400).root;
  }
  out.expected_loss = L * model.breach_probability(out.z_gl, v) + d * out.z_gl;
  out.bound_ratio = d * out.z_gl / (v * L);
  return out;
}

std::vector<ComparisonRow> compare_models(const Scenario& scn, std::span<const double> v_grid) {
  if (v_grid.empty()) throw std::invalid_argument("compare_models: empty v grid");
  const DefenderSolver solver(scn);
  std::vector<ComparisonRow> rows;
  rows.reserve(v_grid.size());
  for (double v : v_grid) {
    ComparisonRow row;
    row.v = v;
    row.z_gl = solve_gordon_loeb(scn, v).z_gl;
    const auto sol = solver.solve(v);
    row.z_two_sided = sol.z_star;
    row.decision = sol.decision;
    row.two_sided_exceeds = row.z_two_sided > row.z_gl;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tsgl
