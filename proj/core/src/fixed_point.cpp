#include "tsgl/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "tsgl/numeric.hpp"

namespace tsgl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEdge = 1e-9;
constexpr std::size_t kScanPoints = 4096;
constexpr double kRootTol = 1e-10;
constexpr double kMergeDistance = 1e-6;

/*
 * Residual whose sign equals sign(D(x) f(x) - R), in the scale-free form
 * available for the closed-form families.
 */
struct FpeResidual {
  std::function<double(double)> fn;
  double scale = 1.0;  // magnitude of the constant term, for tangency tolerance
};

FpeResidual make_residual(const Scenario& scn) {
  const auto& m = scn.model();
  const double R = scn.R();
  switch (m.family()) {
    case Family::GLClassI: {
      const double rab = R * m.alpha() * m.beta();
      return {[rab](double x) { return universal_xi(x) - rab; }, rab};
    }
    case Family::GLClassII: {
      const double ar = m.alpha() * R;
      return {[ar](double x) { return universal_xi(x) + ar * std::log(x); }, ar};
    }
    case Family::CustomGamma:
      break;
  }
  return {[&scn, R](double x) { return gradient_function(scn, x) * scn.model().f(x) - R; }, R};
}

// Points on (lo, hi), log-spaced in the distance to each endpoint.
std::vector<double> two_sided_log_grid(double lo, double hi, std::size_t n, double eps) {
  const std::size_t half = n / 2;
  const double mid = 0.5 * (lo + hi);
  std::vector<double> out;
  out.reserve(2 * half);
  const double left_span = std::max(mid - lo, 2.0 * eps);
  const double right_span = std::max(hi - mid, 2.0 * eps);
  for (std::size_t i = 0; i < half; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(half - 1);
    out.push_back(lo + eps * std::pow(left_span / eps, t));
  }
  for (std::size_t j = half; j-- > 0;) {
    const double t = static_cast<double>(j) / static_cast<double>(half - 1);
    out.push_back(hi - eps * std::pow(right_span / eps, t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FixedPointRoot> scan_roots(const FpeResidual& res, double lo, double hi) {
  const auto grid = two_sided_log_grid(lo, hi, kScanPoints, kEdge);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = res.fn(grid[i]);

  std::vector<FixedPointRoot> roots;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (vals[i] == 0.0) {
      roots.push_back({grid[i], false});
      continue;
    }
    if (i + 1 < grid.size() && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0)) {
      roots.push_back({numeric::bisect(res.fn, grid[i], grid[i + 1], kRootTol, 200).root, false});
    }
  }

  // Touching extrema that never change sign on the grid.
  const double tangent_tol = 1e-12 * std::max(1.0, std::fabs(res.scale));
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const bool local_max = vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] && vals[i] < 0.0;
    const bool local_min = vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] && vals[i] > 0.0;
    if (!local_max && !local_min) continue;
    const double sgn = local_max ? 1.0 : -1.0;
    const auto ext = numeric::golden_section_max(
        [&](double x) { return sgn * res.fn(x); }, grid[i - 1], grid[i + 1], 1e-14);
    if (std::fabs(ext.value) <= tangent_tol) roots.push_back({ext.x, true});
  }

  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.x < b.x; });
  std::vector<FixedPointRoot> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && r.x - merged.back().x < kMergeDistance) {
      merged.back().x = 0.5 * (merged.back().x + r.x);
      merged.back().tangent = true;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace

std::string to_string(Class1Count c) {
  switch (c) {
    case Class1Count::NoneAbove: return "NoneAbove";
    case Class1Count::Two: return "Two";
    case Class1Count::One: return "One";
  }
  return "?";
}

std::string to_string(Class2Count c) { return c == Class2Count::None ? "None" : "One"; }

std::string to_string(PropertyStatus s) {
  switch (s) {
    case PropertyStatus::Pass: return "pass";
    case PropertyStatus::Fail: return "FAIL";
    case PropertyStatus::Skipped: return "skipped";
  }
  return "?";
}

FixedPointReport solve_fpe(const Scenario& scn) {
  const DefenderSolver solver(scn);
  FixedPointReport out;
  out.R = scn.R();
  out.s_hat = solver.shape().s_hat;
  out.v_hat = solver.v_hat().value;
  out.v_hat_clamped = solver.v_hat().clamped;

  if (!out.v_hat_clamped) {
    out.roots = scan_roots(make_residual(scn), out.s_hat, 1.0);
  }
  if (out.roots.size() == 1) {
    out.v_H = out.roots.front().x;
  } else if (out.roots.size() >= 2) {
    out.v_L = out.roots.front().x;
    out.v_H = out.roots.back().x;
  }

  if (out.v_hat_clamped) {
    out.partition.push_back({0.0, 1.0, 0, DecisionInterval::DI1});
    return out;
  }

  std::vector<double> cuts{0.0};
  if (out.v_hat > 0.0) cuts.push_back(out.v_hat);
  for (const auto& r : out.roots) {
    if (r.x > cuts.back()) cuts.push_back(r.x);
  }
  cuts.push_back(1.0);

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    PartitionInterval iv{cuts[i], cuts[i + 1], 0, DecisionInterval::DI1};
    if (!(i == 0 && out.v_hat > 0.0)) {
      const double mid = 0.5 * (iv.lo + iv.hi);
      const auto s1 = solver.s1(mid);
      if (s1) {
        iv.sign = *s1 > mid ? 1 : (*s1 < mid ? -1 : 0);
        iv.interval = iv.sign < 0 ? DecisionInterval::DI3 : DecisionInterval::DI2;
      }
    }
    out.partition.push_back(iv);
  }
  return out;
}

Class1Count fixed_point_count_class1(const Scenario& scn) {
  const auto& m = scn.model();
  if (m.family() != Family::GLClassI) {
    throw WrongFamilyError("fixed_point_count_class1 requires a GL Class I model");
  }
  const double rab = scn.R() * m.alpha() * m.beta();
  const double xi_hat = universal_xi_peak().xi_hat;
  const double xi_at_peak = universal_xi(classify_gradient_shape(scn).s_hat);
  if (rab >= xi_hat) return Class1Count::NoneAbove;
  if (rab > xi_at_peak) return Class1Count::Two;
  return Class1Count::One;
}

double class2_threshold() {
  const auto peak = universal_xi_peak();
  return peak.xi_hat / -std::log(peak.s_xi);
}

Class2Count fixed_point_count_class2(const Scenario& scn) {
  const auto& m = scn.model();
  if (m.family() != Family::GLClassII) {
    throw WrongFamilyError("fixed_point_count_class2 requires a GL Class II model");
  }
  return m.alpha() * scn.R() <= class2_threshold() ? Class2Count::None : Class2Count::One;
}

CriticalRatio critical_ratio(const Scenario& scn) {
  auto product = [&](double x) { return gradient_function(scn, x) * scn.model().f(x); };
  const auto grid = two_sided_log_grid(0.0, 1.0, kScanPoints, kEdge);
  const auto best = numeric::scan_and_refine_max(product, grid, 1e-10);

  CriticalRatio out{best.value, best.x, false};
  // A maximum pinned to the outermost grid point that still rises toward the
  // boundary means the supremum is not attained inside (0, 1).
  const std::size_t n = grid.size();
  const bool at_right = best.x >= grid[n - 2] && product(grid[n - 1]) > product(grid[n - 2]) &&
                        product(1.0 - 0.5 * kEdge) > product(grid[n - 1]);
  const bool at_left = best.x <= grid[1] && product(grid[0]) > product(grid[1]) &&
                       product(0.5 * kEdge) > product(grid[0]);
  if (at_right || at_left) {
    out.value = kInf;
    out.unbounded = true;
  }
  return out;
}

bool PropertyReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const auto& c) { return c.status == PropertyStatus::Fail; });
}

const PropertyCheck* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

PropertyReport class1_fixed_point_properties(const Scenario& scn) {
  static const char* kNames[] = {"s1_at_v_hat", "s_hat_below_s_xi",
                                 "xi_s_hat_below_peak", "slope_identity",
                                 "root_ordering", "case_separation"};
  PropertyReport report;
  auto skip_all = [&](const std::string& why) {
    for (const char* n : kNames) report.checks.push_back({n, PropertyStatus::Skipped, why});
    return report;
  };

  const auto& m = scn.model();
  if (m.family() != Family::GLClassI) return skip_all("requires a GL Class I model");
  if (m.beta() < 1.0) return skip_all("requires gamma = 1/beta <= 1");

  const DefenderSolver solver(scn);
  const double s_hat = solver.shape().s_hat;
  if (s_hat <= 0.0) return skip_all("degenerate case gamma = 1, s_hat = 0");

  const auto peak = universal_xi_peak();
  const double rab = scn.R() * m.alpha() * m.beta();
  const double xi_s_hat = universal_xi(s_hat);
  auto add = [&](const char* name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok ? PropertyStatus::Pass : PropertyStatus::Fail, detail});
  };
  auto fmt = [](std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [k, v] : kv) {
      os << (first ? "" : ", ") << k << "=" << v;
      first = false;
    }
    return os.str();
  };

  // s1(v_hat) = s_hat < v_hat holds when R alpha beta >= xi(s_hat); below that v_hat < s_hat.
  const auto& vh = solver.v_hat();
  if (vh.clamped) {
    report.checks.push_back({kNames[0], PropertyStatus::Skipped, "v_hat clamped at 1"});
  } else if (rab < xi_s_hat) {
    report.checks.push_back(
        {kNames[0], PropertyStatus::Skipped, "R alpha beta < xi(s_hat): v_hat lies below s_hat"});
  } else {
    const auto s1 = solver.s1(vh.value);
    const bool ok = s1 && std::fabs(*s1 - s_hat) <= 1e-8 && s_hat < vh.value;
    add(kNames[0], ok,
        fmt({{"s1(v_hat)", s1.value_or(std::nan(""))}, {"s_hat", s_hat}, {"v_hat", vh.value}}));
  }

  add(kNames[1], s_hat < peak.s_xi, fmt({{"s_hat", s_hat}, {"s_xi", peak.s_xi}}));
  add(kNames[2], xi_s_hat < peak.xi_hat, fmt({{"xi(s_hat)", xi_s_hat}, {"xi_hat", peak.xi_hat}}));

  const double slope = numeric::central_diff(universal_xi, s_hat, 0.0, 1.0);
  // D = xi / (alpha beta s^(1/beta)), so D_s(s_hat) = 0 gives xi_s = xi / (beta s).
  const double ratio = xi_s_hat / (m.beta() * s_hat);
  add(kNames[3], std::fabs(slope - ratio) <= 1e-6 && slope > 0.0,
      fmt({{"xi'(s_hat)", slope}, {"xi(s_hat)/(beta s_hat)", ratio}, {"xi(s_hat)/s_hat", xi_s_hat / s_hat}}));

  const auto fpe = solve_fpe(scn);
  if (rab >= peak.xi_hat) {
    report.checks.push_back(
        {kNames[4], PropertyStatus::Skipped, "R alpha beta >= xi_hat: xi = R alpha beta has no roots"});
  } else {
    auto res = [rab](double x) { return universal_xi(x) - rab; };
    const double xi2 = numeric::bisect(res, 1e-12, peak.s_xi, 1e-12, 200).root;
    const double xi1 = numeric::bisect(res, peak.s_xi, 1.0 - 1e-12, 1e-12, 200).root;
    bool ok = xi2 < peak.s_xi && peak.s_xi < xi1;
    if (s_hat < xi2) {
      ok = ok && fpe.v_L && fpe.v_H && std::fabs(*fpe.v_L - xi2) <= 1e-8 &&
           std::fabs(*fpe.v_H - xi1) <= 1e-8;
    } else {
      ok = ok && !fpe.v_L && fpe.v_H && std::fabs(*fpe.v_H - xi1) <= 1e-8;
    }
    add(kNames[4], ok, fmt({{"xi_2", xi2}, {"s_hat", s_hat}, {"s_xi", peak.s_xi}, {"xi_1", xi1}}));
  }

  const auto count = fixed_point_count_class1(scn);
  const std::size_t expected = count == Class1Count::Two ? 2 : (count == Class1Count::One ? 1 : 0);
  add(kNames[5], fpe.roots.size() == expected,
      "count=" + to_string(count) + ", roots=" + std::to_string(fpe.roots.size()));
  return report;
}

}  // namespace tsgl
