#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tsgl/attacker.hpp"
#include "tsgl/baseline.hpp"
#include "tsgl/config.hpp"
#include "tsgl/defender.hpp"
#include "tsgl/fixed_point.hpp"
#include "tsgl/numeric.hpp"
#include "tsgl/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = text.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw tsgl::ConfigError("grid '" + text + "' must look like lo:hi:n");
  }
  double lo = 0.0;
  double hi = 0.0;
  long n = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(text.substr(0, a), &used);
    if (used != a) throw std::invalid_argument("lo");
    hi = std::stod(text.substr(a + 1, b - a - 1), &used);
    if (used != b - a - 1) throw std::invalid_argument("hi");
    n = std::stol(text.substr(b + 1), &used);
    if (used != text.size() - b - 1) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw tsgl::ConfigError("grid '" + text + "' must look like lo:hi:n");
  }
  if (n < 2 || !(lo < hi) || !(lo > 0.0) || !(hi < 1.0)) {
    throw tsgl::ConfigError("grid '" + text + "' needs 0 < lo < hi < 1 and n >= 2");
  }
  return tsgl::numeric::linspace(lo, hi, static_cast<std::size_t>(n));
}

void print_csv(const tsgl::RecordTable& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      os << (i ? "," : "") << t.text(r, t.columns[i]);
    }
    os << '\n';
  }
}

tsgl::Scenario load_scenario(const std::string& arg) {
  const auto cfg = tsgl::KeyValueConfig::from_argument(arg);
  cfg.require_known(tsgl::scenario_keys());
  return tsgl::scenario_from_config(cfg);
}

std::string num(double x) { return tsgl::format_number(x); }
std::string num(const std::optional<double>& x) { return x ? num(*x) : "none"; }

nlohmann::json jnum(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}
nlohmann::json jnum(const std::optional<double>& x) { return x ? jnum(*x) : nullptr; }

int attacker_curve(const std::string& model_arg, double G, double c, double v, std::size_t samples,
                   const std::string& out) {
  const auto cfg = tsgl::KeyValueConfig::from_argument(model_arg);
  cfg.require_known(tsgl::model_keys());
  const auto model = tsgl::model_from_config(cfg);
  tsgl::AttackerParams attacker;
  try {
    attacker = tsgl::AttackerParams(G, c);
  } catch (const std::invalid_argument& e) {
    throw tsgl::ConfigError(e.what());
  }
  if (!(v > 0.0 && v < 1.0)) throw tsgl::ConfigError("--v must lie in (0, 1)");

  tsgl::emit_csv(tsgl::attacker_curve_table(model, attacker, v, samples), out);

  const auto peak = tsgl::peak_effort(attacker);
  const auto price = tsgl::price_of_deterrence(model, attacker, v);
  const double s_P = tsgl::deterrence_threshold(attacker);
  std::cout << "s_P = " << num(s_P) << '\n'
            << "z_P = " << num(price.z_P) << '\n'
            << "s_plus = " << num(peak.s_plus) << '\n'
            << "y_plus = " << num(peak.y_plus) << '\n';
  if (peak.s_plus <= v) std::cout << "z_plus = " << num(model.effort(peak.s_plus, v)) << '\n';
  return 0;
}

int defender_policy(const std::string& scenario_arg, const std::optional<double>& v,
                    const std::string& sweep, const std::string& out) {
  const auto scn = load_scenario(scenario_arg);
  if (!sweep.empty()) {
    const auto table = tsgl::policy_table(scn, parse_grid(sweep));
    if (out.empty()) {
      print_csv(table, std::cout);
    } else {
      tsgl::emit_csv(table, out);
    }
    return 0;
  }
  if (!v || !(*v > 0.0 && *v < 1.0)) throw tsgl::ConfigError("--v must lie in (0, 1)");
  const auto sol = tsgl::solve_defender(scn, *v);
  std::cout << "v = " << num(*v) << '\n'
            << "R = " << num(scn.R()) << '\n'
            << "DI = " << tsgl::to_string(sol.decision_interval) << '\n'
            << "decision = " << tsgl::to_string(sol.decision) << '\n'
            << "s_star = " << num(sol.s_star) << '\n'
            << "z_star = " << num(sol.z_star) << '\n'
            << "phi_star = " << num(sol.phi_star) << '\n'
            << "s1 = " << num(sol.s1) << '\n'
            << "s2 = " << num(sol.s2) << '\n'
            << "s_P = " << num(sol.s_P) << '\n'
            << "v_hat = " << num(sol.v_hat) << '\n';
  return 0;
}

int fixed_points(const std::string& scenario_arg, bool as_json) {
  const auto scn = load_scenario(scenario_arg);
  const auto rep = tsgl::solve_fpe(scn);
  const auto rc = tsgl::critical_ratio(scn);
  std::string count;
  if (scn.model().family() == tsgl::Family::GLClassI) {
    count = tsgl::to_string(tsgl::fixed_point_count_class1(scn));
  } else if (scn.model().family() == tsgl::Family::GLClassII) {
    count = tsgl::to_string(tsgl::fixed_point_count_class2(scn));
  }

  if (as_json) {
    nlohmann::json j;
    j["R"] = jnum(rep.R);
    j["s_hat"] = jnum(rep.s_hat);
    j["v_hat"] = jnum(rep.v_hat);
    j["v_hat_clamped"] = rep.v_hat_clamped;
    j["v_L"] = jnum(rep.v_L);
    j["v_H"] = jnum(rep.v_H);
    j["R_c"] = jnum(rc.value);
    j["R_c_unbounded"] = rc.unbounded;
    if (!count.empty()) j["count"] = count;
    j["roots"] = nlohmann::json::array();
    for (const auto& r : rep.roots) j["roots"].push_back({{"x", r.x}, {"tangent", r.tangent}});
    j["partition"] = nlohmann::json::array();
    for (const auto& p : rep.partition) {
      j["partition"].push_back({{"lo", p.lo},
                                {"hi", p.hi},
                                {"sign", p.sign},
                                {"interval", tsgl::to_string(p.interval)}});
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  std::cout << "R = " << num(rep.R) << '\n'
            << "s_hat = " << num(rep.s_hat) << '\n'
            << "v_hat = " << num(rep.v_hat) << (rep.v_hat_clamped ? " (clamped)" : "") << '\n'
            << "v_L = " << num(rep.v_L) << '\n'
            << "v_H = " << num(rep.v_H) << '\n'
            << "R_c = " << (rc.unbounded ? std::string("unbounded") : num(rc.value)) << '\n';
  if (!count.empty()) std::cout << "count = " << count << '\n';
  for (const auto& r : rep.roots) {
    std::cout << "root = " << num(r.x) << (r.tangent ? " (tangent)" : "") << '\n';
  }
  std::cout << "\nlo,hi,sign,interval\n";
  for (const auto& p : rep.partition) {
    std::cout << num(p.lo) << ',' << num(p.hi) << ',' << p.sign << ','
              << tsgl::to_string(p.interval) << '\n';
  }
  return 0;
}

int compare_gl(const std::string& scenario_arg, const std::string& sweep, const std::string& out) {
  const auto scn = load_scenario(scenario_arg);
  tsgl::emit_csv(tsgl::comparison_table(scn, parse_grid(sweep)), out);
  return 0;
}

int sweep(const std::string& spec_arg, const std::string& out_dir) {
  const auto spec = tsgl::sweep_spec_from_config(tsgl::KeyValueConfig::from_argument(spec_arg));
  const auto result = tsgl::run_sweep(spec);
  const auto files = tsgl::write_sweep(spec, result, out_dir);
  std::size_t failed = 0;
  const auto err = result.table.column_index("error");
  for (const auto& row : result.table.rows) {
    if (const auto* s = std::get_if<std::string>(&row[err]); s && !s->empty()) ++failed;
  }
  std::cout << files.table_csv.string() << '\n'
            << files.figure_csv.string() << '\n'
            << files.svg.string() << '\n';
  if (failed) {
    std::cerr << failed << " of " << result.table.rows.size() << " rows failed\n";
    return kExitSolver;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided security game solver"};
  app.require_subcommand(1);

  std::string model_arg;
  std::string scenario_arg;
  std::string spec_arg;
  std::string out;
  std::string out_dir;
  std::string v_sweep;
  double G = 0.0;
  double c = 0.0;
  double v = 0.0;
  std::optional<double> v_opt;
  std::size_t samples = 200;
  bool as_json = false;

  auto* ac = app.add_subcommand("attacker-curve", "attacker best response along s");
  ac->add_option("--model", model_arg, "model config file or inline k=v;k=v")->required();
  ac->add_option("--G", G, "attacker gain")->required();
  ac->add_option("--c", c, "attacker cost per attempt")->required();
  ac->add_option("--v", v, "initial vulnerability")->required();
  ac->add_option("--samples", samples, "number of s samples")->check(CLI::Range(2, 10000000));
  ac->add_option("--out", out, "output CSV")->required();

  auto* dp = app.add_subcommand("defender-policy", "defender optimum at one v or over a v grid");
  dp->add_option("--scenario", scenario_arg, "scenario config")->required();
  auto* dp_v = dp->add_option("--v", v_opt, "initial vulnerability");
  auto* dp_sweep = dp->add_option("--v-sweep", v_sweep, "lo:hi:n");
  dp_v->excludes(dp_sweep);
  dp->add_option("--out", out, "CSV path for --v-sweep (default stdout)");

  auto* fp = app.add_subcommand("fixed-points", "fixed points of s1(v) = v");
  fp->add_option("--scenario", scenario_arg, "scenario config")->required();
  fp->add_flag("--json", as_json, "structured output");

  auto* cg = app.add_subcommand("compare-gl", "two-sided optimum against the one-sided baseline");
  cg->add_option("--scenario", scenario_arg, "scenario config")->required();
  cg->add_option("--v-sweep", v_sweep, "lo:hi:n")->required();
  cg->add_option("--out", out, "output CSV")->required();

  auto* sw = app.add_subcommand("sweep", "parameter sweep to CSV and SVG");
  sw->add_option("--spec", spec_arg, "sweep config")->required();
  sw->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*ac) return attacker_curve(model_arg, G, c, v, samples, out);
    if (*dp) {
      if (!*dp_v && !*dp_sweep) throw tsgl::ConfigError("defender-policy needs --v or --v-sweep");
      return defender_policy(scenario_arg, v_opt, v_sweep, out);
    }
    if (*fp) return fixed_points(scenario_arg, as_json);
    if (*cg) return compare_gl(scenario_arg, v_sweep, out);
    if (*sw) return sweep(spec_arg, out_dir);
  } catch (const tsgl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitConfig;
}
