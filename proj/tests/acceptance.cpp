// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.
//
//   tsgl_acceptance [path-to-tsgl-cli]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tsgl/attacker.hpp"
#include "tsgl/baseline.hpp"
#include "tsgl/defender.hpp"
#include "tsgl/fixed_point.hpp"
#include "tsgl/numeric.hpp"
#include "tsgl/report.hpp"

using namespace tsgl;
using namespace tsgl::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "" : "FAILED ") + what);
    pass = pass && ok;
  }
  void near(double got, double want, double tol, const std::string& name) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.6g (want %.6g +- %.3g)", name.c_str(), got, want, tol);
    check(std::fabs(got - want) <= tol, buf);
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0: none
  std::function<Outcome()> run;
};

Outcome attacker_peak() {
  Outcome o;
  const auto scn = gl1_unit();
  const auto pk = peak_effort(scn.attacker());
  o.near(pk.y_plus, 3.679, 0.01, "y_+");
  o.near(pk.s_plus, 0.238, 0.01, "s_+");
  o.near(price_of_deterrence(scn.model(), scn.attacker(), 0.75).z_P, 6.88, 0.01, "z_P");
  return o;
}

Outcome xi_constants() {
  Outcome o;
  const auto pk = universal_xi_peak();
  o.near(pk.s_xi, 0.80, 0.01, "argmax xi");
  o.near(pk.xi_hat, 0.64, 0.01, "max xi");
  return o;
}

Outcome gl2_threshold() {
  Outcome o;
  o.near(class2_threshold(), 2.87, 0.05, "xi_hat/(-log s_xi)");
  auto roots_at = [](double alpha_r) {
    const double alpha = 1e-4;
    return solve_fpe(make_scenario(BreachModel::gl_class2(alpha), 1, 1, alpha_r / alpha, 1)).roots.size();
  };
  const auto n25 = roots_at(2.5);
  const auto n35 = roots_at(3.5);
  o.check(n25 == 0, "roots(alphaR=2.5)=" + std::to_string(n25) + " (want 0)");
  o.check(n35 == 1, "roots(alphaR=3.5)=" + std::to_string(n35) + " (want 1)");
  return o;
}

Outcome gl1_two_fixed_points() {
  Outcome o;
  const auto scn = gl1_r5000();
  const auto shape = classify_gradient_shape(scn);
  const auto rep = solve_fpe(scn);
  o.near(shape.s_hat, 0.47, 0.01, "s_hat");
  o.check(rep.v_L.has_value() && rep.v_H.has_value(), "two fixed points found");
  if (rep.v_L) o.near(*rep.v_L, 0.59, 0.01, "v_L");
  if (rep.v_H) o.near(*rep.v_H, 0.92, 0.01, "v_H");
  o.near(universal_xi(shape.s_hat), 0.43, 0.01, "xi(s_hat)");
  const double rab = scn.R() * scn.model().alpha() * scn.model().beta();
  o.near(rab, 0.55, 1e-12, "R alpha beta");
  return o;
}

Outcome gl2_transition() {
  Outcome o;
  SweepSpec spec(gl2_flip());
  spec.variable = SweepVariable::V;
  spec.range = {0.001, 0.999, 1000};
  spec.outputs = {SweepOutput::Defender};
  const auto res = run_sweep(spec);
  int flips = 0;
  bool all_in_to_none = true;
  double flip_v = NAN;
  for (std::size_t i = 1; i < res.table.rows.size(); ++i) {
    const auto a = res.table.text(i - 1, "decision");
    const auto b = res.table.text(i, "decision");
    if (a != b) {
      ++flips;
      flip_v = res.table.number(i, "v");
      all_in_to_none = all_in_to_none && a == "AllIn" && b == "None";
    }
  }
  o.check(flips == 1 && all_in_to_none, "decision changes=" + std::to_string(flips) + ", AllIn->None");
  o.near(flip_v, 0.80, 0.01, "flip v");
  return o;
}

Outcome gl1_interval_sequence() {
  Outcome o;
  const auto scn = gl1_r5000();
  const DefenderSolver solver(scn);
  const auto grid = numeric::linspace(0.001, 0.999, 1000);
  std::vector<std::pair<double, DecisionInterval>> runs;
  for (double v : grid) {
    const auto di = solver.decision_interval(v);
    if (runs.empty() || runs.back().second != di) runs.emplace_back(v, di);
  }
  std::string seq;
  for (const auto& r : runs) {
    switch (r.second) {
      case DecisionInterval::DI1: seq += "AllIn;"; break;
      case DecisionInterval::DI2: seq += "AllIn/None;"; break;
      case DecisionInterval::DI3: seq += "AllIn/Some;"; break;
    }
  }
  o.check(seq == "AllIn;AllIn/Some;AllIn/None;AllIn/Some;", "sequence " + seq);
  if (runs.size() == 4) {
    const double step = grid[1] - grid[0];
    o.near(runs[1].first, solver.v_hat().value, step, "boundary 1 vs v_hat");
    o.near(runs[2].first, 0.59, 0.01, "boundary 2");
    o.near(runs[3].first, 0.92, 0.01, "boundary 3");
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Rng rng(20240607);
  double worst_gap = -INFINITY;
  int bad = 0;
  for (int k = 0; k < 50; ++k) {
    const auto scn = random_gl_scenario(rng);
    const double v = rng.uniform(0.02, 0.98);
    const double L = scn.defender().loss;
    const auto sol = solve_defender(scn, v);
    double grid_min = INFINITY;
    constexpr int kPoints = 100000;
    for (int i = 1; i <= kPoints; ++i) grid_min = std::min(grid_min, objective(scn, std::min(v, v * i / kPoints), v));
    const double gap = (sol.phi_star - grid_min) / L;
    worst_gap = std::max(worst_gap, gap);
    if (gap > 1e-6) ++bad;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "Phi* <= grid min + 1e-6 L in 50/50 (violations %d, worst (Phi*-min)/L=%.3g)",
                bad, worst_gap);
  o.check(bad == 0, buf);

  int y_bad = 0;
  double y_worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const AttackerParams p{rng.log_uniform(1.5, 100.0), 1.0};
    const double s = rng.uniform(0.01, 0.99);
    const double closed = best_response(p, s).y_star;
    auto value = [&](double y) { return p.gain * breach_under_attack(s, y) - p.unit_cost * y; };
    // Coarse grid over [0, G/c], then a fine grid around the coarse winner.
    const double y_max = p.gain_to_cost();
    double best_y = 0.0;
    for (double y : numeric::linspace(0.0, y_max, 20001)) {
      if (value(y) > value(best_y)) best_y = y;
    }
    const double h = y_max / 20000.0;
    double fine = best_y;
    for (double y : numeric::linspace(std::max(0.0, best_y - h), best_y + h, 20001)) {
      if (value(y) > value(fine)) fine = y;
    }
    const double err = std::fabs(fine - closed);
    y_worst = std::max(y_worst, err);
    if (err > 1e-3) ++y_bad;
  }
  std::snprintf(buf, sizeof buf, "y* vs grid argmax within 1e-3 in 100/100 (violations %d, worst %.3g)", y_bad,
                y_worst);
  o.check(y_bad == 0, buf);
  return o;
}

Outcome proposition_suites() {
  Outcome o;
  const std::vector<std::pair<std::string, Scenario>> canon = {
      {"GL I b=1.1", gl1_r5000()},
      {"GL II", gl2_flip()},
      {"GL I a=b=1", gl1_unit()},
  };
  const auto grid = numeric::interior_grid(0.0, 1.0, 256);

  // H_s < 0 for gamma in Gamma_1.
  for (const auto& [name, scn] : canon) {
    if (classify_gamma(scn.model()).tag != GammaTag::Gamma1) continue;
    int bad = 0;
    for (double s : grid) {
      const double hs = numeric::central_diff([&](double x) { return hessian_surrogate(scn, x); }, s, 0.0, 1.0);
      if (!(hs < 0.0)) ++bad;
    }
    o.check(bad == 0, name + ": H_s < 0 on grid (violations " + std::to_string(bad) + ")");
  }

  // Gamma_2: D strictly decreasing and log-log slope near 0 equal to -(gamma(0) + 1 - 2).
  for (double beta : {0.9, 0.8}) {
    const auto scn = make_scenario(BreachModel::gl_class1(1e-4, beta), 10, 1, 1e4, 1);
    int bad = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(gradient_function(scn, grid[i]) < gradient_function(scn, grid[i - 1]))) ++bad;
    }
    const double s0 = 1e-8;
    const double s1 = 1e-7;
    const double slope = -(std::log(gradient_function(scn, s1)) - std::log(gradient_function(scn, s0))) /
                         (std::log(s1) - std::log(s0));
    const double expect = scn.model().gamma(0.0) + 1.0 - 2.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "beta=%.1f: D decreasing (violations %d), divergence slope %.4f vs %.4f", beta,
                  bad, slope, expect);
    o.check(bad == 0 && std::fabs(slope - expect) <= 0.05, buf);
  }

  // Sign pattern of Phi_s around s2 and s1.
  for (const auto& [name, scn] : canon) {
    const DefenderSolver solver(scn);
    const double v_lo = std::max(solver.v_hat().value, solver.s_P()) + 0.01;
    if (solver.v_hat().clamped || v_lo >= 0.99) {
      o.check(true, name + ": Phi_s sign pattern not applicable (no stationary points below v=0.99)");
      continue;
    }
    int bad = 0;
    int checked = 0;
    for (double v : numeric::linspace(v_lo, 0.99, 8)) {
      const auto sp = solver.stationary_points(v);
      if (!sp.s1) continue;
      auto dphi = [&](double s) {
        return numeric::central_diff([&](double x) { return objective(scn, x, v); }, s, solver.s_P(), v);
      };
      const double s2 = sp.s2.value_or(0.0);
      const std::vector<std::tuple<double, double, int>> pieces = {
          {solver.s_P(), std::min(s2, v), 1},
          {std::max(solver.s_P(), s2), std::min(*sp.s1, v), -1},
          {std::max(solver.s_P(), *sp.s1), v, 1}};
      for (const auto& [lo, hi, sign] : pieces) {
        if (!(hi - lo > 1e-6)) continue;
        for (double s : numeric::interior_grid(lo, hi, 32, 1e-3 * (hi - lo))) {
          ++checked;
          if ((dphi(s) > 0.0 ? 1 : -1) != sign) ++bad;
        }
      }
    }
    o.check(bad == 0 && checked > 0, name + ": Phi_s sign pattern (+,-,+) at " + std::to_string(checked) +
                                         " points (violations " + std::to_string(bad) + ")");
  }

  // F(s) = s^2 - (1-s) log^2(1-s) > 0 with F(0) = 0.
  {
    auto F = [](double s) {
      const double l = std::log1p(-s);
      return s * s - (1.0 - s) * l * l;
    };
    int bad = 0;
    for (double s : numeric::interior_grid(0.0, 1.0, 1024)) bad += !(F(s) > 0.0);
    o.check(bad == 0 && F(0.0) == 0.0, "F(s) > 0 on 1024-grid, F(0) = 0 (violations " + std::to_string(bad) + ")");
  }

  // Slope identity xi_s(s_hat) = xi(s_hat)/s_hat.
  for (const auto& scn : {gl1_r5000(), make_scenario(BreachModel::gl_class1(1.0, 1.5), 10, 1, 10, 1)}) {
    const auto rep = class1_fixed_point_properties(scn);
    const auto* c = rep.find("slope_identity");
    o.check(c && c->status == PropertyStatus::Pass,
            "slope identity beta=" + format_number(scn.model().beta()) + (c ? ": " + c->detail : ""));
  }
  return o;
}

Outcome gordon_loeb_baseline() {
  Outcome o;
  Rng rng(99);
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    const double alpha = rng.log_uniform(1e-5, 1.0);
    BreachModel m = rng.coin() ? BreachModel::gl_class1(alpha, rng.uniform(1.0, 3.0))
                               : BreachModel::gl_class2(alpha);
    const double L = rng.log_uniform(1.0, 1e6);
    const double d = rng.log_uniform(0.1, 10.0);
    const auto scn = make_scenario(std::move(m), 10, 1, L, d);
    const double v = rng.uniform(0.01, 0.99);
    const auto sol = solve_gordon_loeb(scn, v);
    if (!(d * sol.z_gl <= v * L / std::exp(1.0) + 1e-9 * L)) ++bad;
  }
  o.check(bad == 0, "d z_gl <= v L / e over 100 scenarios (violations " + std::to_string(bad) + ")");
  const auto rows = compare_models(gl1_r5000(), numeric::linspace(0.01, 0.99, 100));
  int exceed = 0;
  for (const auto& r : rows) exceed += r.two_sided_exceeds;
  o.check(exceed >= 1, "GL I R=5000: two-sided z* > z_gl at " + std::to_string(exceed) + " grid points");
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  const auto root = fs::temp_directory_path() / "tsgl_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto cfg = root / "gl1_policy.cfg";
  {
    std::ofstream out(cfg);
    out << "family = gl1\nalpha = 1e-4\nbeta = 1.1\nG = 70000\nc = 3500\nL = 100000\nd = 1\n"
           "variable = v\nlo = 0.01\nhi = 0.99\nn = 400\n"
           "outputs = attacker, defender, fixed_points, baseline\nname = gl1_policy\n";
  }
  for (const char* run : {"a", "b"}) {
    if (!cli.empty()) {
      const std::string cmd =
          "\"" + cli + "\" sweep --spec \"" + cfg.string() + "\" --out-dir \"" + (root / run).string() + "\" >/dev/null";
      o.check(std::system(cmd.c_str()) == 0, std::string("cli sweep run ") + run);
    } else {
      const auto spec = sweep_spec_from_config(KeyValueConfig::load(cfg));
      write_sweep(spec, run_sweep(spec), root / run);
      o.check(true, std::string("library sweep run ") + run);
    }
  }
  for (const char* f : {"gl1_policy.csv", "gl1_policy_figure.csv", "gl1_policy.svg"}) {
    const auto a = slurp(root / "a" / f);
    const auto b = slurp(root / "b" / f);
    o.check(!a.empty() && a == b, std::string(f) + " byte-identical (" + std::to_string(a.size()) + " bytes)");
  }
  fs::remove_all(root);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {1, "attacker peak and price of deterrence", 1.0, attacker_peak},
      {2, "universal function constants", 0.0, xi_constants},
      {3, "GL II fixed-point threshold", 0.0, gl2_threshold},
      {4, "GL I two fixed points (R=5000, beta=1.1)", 0.0, gl1_two_fixed_points},
      {5, "GL II AllIn->None transition", 10.0, gl2_transition},
      {6, "GL I decision interval sequence", 0.0, gl1_interval_sequence},
      {7, "oracle equivalence", 60.0, oracle_equivalence},
      {8, "analytic property suites", 0.0, proposition_suites},
      {9, "Gordon-Loeb baseline", 0.0, gordon_loeb_baseline},
      {10, "sweep determinism", 0.0, [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "runtime %.3fs < %.0fs", secs, c.time_limit_s);
      o.check(secs < c.time_limit_s, buf);
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s  criterion %2d  %-42s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
