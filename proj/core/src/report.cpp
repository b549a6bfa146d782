#include "tsgl/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tsgl/baseline.hpp"
#include "tsgl/defender.hpp"
#include "tsgl/fixed_point.hpp"
#include "tsgl/numeric.hpp"

namespace tsgl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double opt(const std::optional<double>& x) { return x ? *x : kNaN; }

bool has(const SweepSpec& spec, SweepOutput o) { return spec.outputs.count(o) != 0; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isnan(*d) ? "" : format_number(*d);
  return csv_escape(std::get<std::string>(c));
}

// Runs body(i) for i in [0, n) on up to `threads` workers; each index is
// written by exactly one worker.
template <class Body>
void parallel_for(std::size_t n, std::size_t threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct ColumnSet {
  std::vector<std::string> names;
  std::size_t add(std::string name) {
    names.push_back(std::move(name));
    return names.size() - 1;
  }
};

void mark(FigureBundle& fig, const std::string& name, double x, double lo, double hi) {
  if (std::isnan(x)) return;
  fig.markers.push_back({name, x, x >= lo && x <= hi});
}

SweepResult sweep_v(const SweepSpec& spec, const std::vector<double>& grid) {
  const auto& scn = spec.scenario;
  const DefenderSolver solver(scn);
  const bool att = has(spec, SweepOutput::Attacker);
  const bool def = has(spec, SweepOutput::Defender);
  const bool base = has(spec, SweepOutput::Baseline);
  const bool fp = has(spec, SweepOutput::FixedPoints);

  ColumnSet cols;
  cols.add("v");
  std::size_t c_di = 0, c_dec = 0, c_s = 0, c_z = 0, c_phi = 0, c_s1 = 0, c_s2 = 0;
  std::size_t c_y = 0, c_T = 0, c_gain = 0, c_zgl = 0, c_gl_loss = 0, c_ratio = 0, c_sign = 0;
  if (def) {
    c_di = cols.add("DI");
    c_dec = cols.add("decision");
    c_s = cols.add("s_star");
    c_z = cols.add("z_star");
    c_phi = cols.add("phi_star");
    c_s1 = cols.add("s1");
    c_s2 = cols.add("s2");
  }
  if (att) {
    c_y = cols.add("y_star");
    c_T = cols.add("T_star");
    c_gain = cols.add("attacker_net_gain");
  }
  if (base) {
    c_zgl = cols.add("z_gl");
    c_gl_loss = cols.add("gl_expected_loss");
    c_ratio = cols.add("gl_bound_ratio");
  }
  if (fp) c_sign = cols.add("s1_minus_v_sign");
  const std::size_t c_err = cols.add("error");

  std::vector<std::vector<Cell>> rows(grid.size(),
                                      std::vector<Cell>(cols.names.size(), Cell{kNaN}));
  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    auto& row = rows[i];
    const double v = grid[i];
    row[0] = v;
    row[c_err] = std::string();
    try {
      const auto sol = solver.solve(v);
      if (def) {
        row[c_di] = to_string(sol.decision_interval);
        row[c_dec] = to_string(sol.decision);
        row[c_s] = sol.s_star;
        row[c_z] = sol.z_star;
        row[c_phi] = sol.phi_star;
        row[c_s1] = opt(sol.s1);
        row[c_s2] = opt(sol.s2);
      }
      if (att) {
        // The attacker responds to the vulnerability the defender implements.
        const auto resp = best_response(scn.attacker(), sol.s_star);
        row[c_y] = resp.y_star;
        row[c_T] = resp.T_star;
        row[c_gain] = resp.net_gain;
      }
      if (base) {
        const auto gl = solve_gordon_loeb(scn, v);
        row[c_zgl] = gl.z_gl;
        row[c_gl_loss] = gl.expected_loss;
        row[c_ratio] = gl.bound_ratio;
      }
      if (fp) {
        const double sign =
            sol.s1 ? static_cast<double>((*sol.s1 > v) - (*sol.s1 < v)) : kNaN;
        row[c_sign] = sign;
      }
    } catch (const std::exception& e) {
      row[c_err] = std::string(e.what());
    }
  });

  SweepResult out;
  out.table.columns = cols.names;
  out.table.rows = std::move(rows);

  auto& fig = out.figure;
  fig.x_label = "initial vulnerability v";
  fig.y_label = "investment";
  auto column_series = [&](const std::string& name, std::size_t col) {
    Series s{name, {}, {}};
    for (const auto& row : out.table.rows) {
      s.x.push_back(std::get<double>(row[0]));
      const auto* d = std::get_if<double>(&row[col]);
      s.y.push_back(d ? *d : kNaN);
    }
    fig.series.push_back(std::move(s));
  };
  if (def) column_series("defender z*", c_z);
  if (att) column_series("attacker y*", c_y);
  if (base) column_series("Gordon-Loeb z", c_zgl);

  const double lo = spec.range.lo;
  const double hi = spec.range.hi;
  mark(fig, "s_P", solver.s_P(), lo, hi);
  if (solver.shape().s_hat > 0.0) mark(fig, "s_hat", solver.shape().s_hat, lo, hi);
  if (!solver.v_hat().clamped && solver.v_hat().value > 0.0) {
    mark(fig, "v_hat", solver.v_hat().value, lo, hi);
  }
  if (fp) {
    const auto rep = solve_fpe(scn);
    mark(fig, "v_L", opt(rep.v_L), lo, hi);
    mark(fig, "v_H", opt(rep.v_H), lo, hi);
  }
  return out;
}

SweepResult sweep_s(const SweepSpec& spec, const std::vector<double>& grid) {
  const auto& scn = spec.scenario;
  const double v = spec.fixed_v;
  const bool att = has(spec, SweepOutput::Attacker);
  const bool def = has(spec, SweepOutput::Defender);

  std::optional<DefenderSolver> solver;
  if (def) solver.emplace(scn);

  ColumnSet cols;
  cols.add("s");
  const std::size_t c_z = cols.add("z");
  std::size_t c_y = 0, c_T = 0, c_gain = 0, c_D = 0, c_level = 0, c_phi = 0;
  if (att) {
    c_y = cols.add("y_star");
    c_T = cols.add("T_star");
    c_gain = cols.add("net_gain");
  }
  if (def) {
    c_D = cols.add("D");
    c_level = cols.add("R_over_f_v");
    c_phi = cols.add("phi");
  }
  const std::size_t c_err = cols.add("error");

  std::vector<std::vector<Cell>> rows(grid.size(),
                                      std::vector<Cell>(cols.names.size(), Cell{kNaN}));
  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    auto& row = rows[i];
    const double s = grid[i];
    row[0] = s;
    row[c_err] = std::string();
    try {
      if (s <= v) row[c_z] = scn.model().effort(s, v);
      if (att) {
        const auto resp = best_response(scn.attacker(), s);
        row[c_y] = resp.y_star;
        row[c_T] = resp.T_star;
        row[c_gain] = resp.net_gain;
      }
      if (def) {
        row[c_D] = gradient_function(scn, s);
        row[c_level] = scn.R() / scn.model().f(v);
        if (s <= v) row[c_phi] = objective(scn, s, v);
      }
    } catch (const std::exception& e) {
      row[c_err] = std::string(e.what());
    }
  });

  SweepResult out;
  out.table.columns = cols.names;
  out.table.rows = std::move(rows);
  auto& fig = out.figure;
  fig.x_label = "system vulnerability s";
  fig.y_label = att ? "attacker effort" : "gradient function";
  auto column_series = [&](const std::string& name, std::size_t col) {
    Series ser{name, {}, {}};
    for (const auto& row : out.table.rows) {
      ser.x.push_back(std::get<double>(row[0]));
      ser.y.push_back(std::get<double>(row[col]));
    }
    fig.series.push_back(std::move(ser));
  };
  if (att) column_series("y*(s)", c_y);
  if (def) {
    column_series("D(s)", c_D);
    column_series("R/f(v)", c_level);
  }

  const double lo = spec.range.lo;
  const double hi = spec.range.hi;
  mark(fig, "s_P", deterrence_threshold(scn.attacker()), lo, hi);
  mark(fig, "s_+", peak_effort(scn.attacker()).s_plus, lo, hi);
  if (solver && solver->shape().s_hat > 0.0) mark(fig, "s_hat", solver->shape().s_hat, lo, hi);
  return out;
}

SweepResult sweep_R(const SweepSpec& spec, const std::vector<double>& grid) {
  const auto& base = spec.scenario;
  const bool def = has(spec, SweepOutput::Defender);
  const bool fp = has(spec, SweepOutput::FixedPoints) || !def;

  ColumnSet cols;
  cols.add("R");
  std::size_t c_shat = 0, c_vhat = 0, c_n = 0, c_vl = 0, c_vh = 0, c_di = 0, c_dec = 0, c_z = 0;
  if (fp) {
    c_shat = cols.add("s_hat");
    c_vhat = cols.add("v_hat");
    c_n = cols.add("fixed_points");
    c_vl = cols.add("v_L");
    c_vh = cols.add("v_H");
  }
  if (def) {
    c_di = cols.add("DI");
    c_dec = cols.add("decision");
    c_z = cols.add("z_star");
  }
  const std::size_t c_err = cols.add("error");

  std::vector<std::vector<Cell>> rows(grid.size(),
                                      std::vector<Cell>(cols.names.size(), Cell{kNaN}));
  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    auto& row = rows[i];
    const double r = grid[i];
    row[0] = r;
    row[c_err] = std::string();
    try {
      const auto scn = base.with_ratio(r);
      if (fp) {
        const auto rep = solve_fpe(scn);
        row[c_shat] = rep.s_hat;
        row[c_vhat] = rep.v_hat_clamped ? kNaN : rep.v_hat;
        row[c_n] = static_cast<double>(rep.roots.size());
        row[c_vl] = opt(rep.v_L);
        row[c_vh] = opt(rep.v_H);
      }
      if (def) {
        const auto sol = solve_defender(scn, spec.fixed_v);
        row[c_di] = to_string(sol.decision_interval);
        row[c_dec] = to_string(sol.decision);
        row[c_z] = sol.z_star;
      }
    } catch (const std::exception& e) {
      row[c_err] = std::string(e.what());
    }
  });

  SweepResult out;
  out.table.columns = cols.names;
  out.table.rows = std::move(rows);
  auto& fig = out.figure;
  fig.x_label = "effective loss-to-gain ratio R";
  fig.y_label = "vulnerability";
  auto column_series = [&](const std::string& name, std::size_t col) {
    Series ser{name, {}, {}};
    for (const auto& row : out.table.rows) {
      ser.x.push_back(std::get<double>(row[0]));
      ser.y.push_back(std::get<double>(row[col]));
    }
    fig.series.push_back(std::move(ser));
  };
  if (fp) {
    column_series("v_hat", c_vhat);
    column_series("v_L", c_vl);
    column_series("v_H", c_vh);
  } else {
    column_series("defender z*", c_z);
  }
  const auto rc = critical_ratio(base);
  if (!rc.unbounded) mark(fig, "R_c", rc.value, spec.range.lo, spec.range.hi);
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (range.n < 2) throw std::invalid_argument("sweep needs n >= 2");
  if (!(range.lo < range.hi)) throw std::invalid_argument("sweep needs lo < hi");
  if (variable != SweepVariable::R && !(range.lo > 0.0 && range.hi < 1.0)) {
    throw std::invalid_argument("probability sweeps need 0 < lo < hi < 1");
  }
  if (variable == SweepVariable::R && !(range.lo > 0.0)) {
    throw std::invalid_argument("R sweeps need lo > 0");
  }
  if (outputs.empty()) throw std::invalid_argument("sweep needs at least one output");
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
    throw std::invalid_argument("sweep name must be a plain file stem");
  }
  if (!(fixed_v > 0.0 && fixed_v < 1.0)) throw std::invalid_argument("v must lie in (0, 1)");
}

const std::vector<std::string>& sweep_keys() {
  static const std::vector<std::string> keys = [] {
    auto k = scenario_keys();
    k.insert(k.end(), {"variable", "lo", "hi", "n", "outputs", "v", "threads", "title", "name"});
    return k;
  }();
  return keys;
}

SweepSpec sweep_spec_from_config(const KeyValueConfig& cfg) {
  cfg.require_known(sweep_keys());
  SweepSpec spec(scenario_from_config(cfg));
  spec.name = cfg.get_string("name", "sweep");
  spec.title = cfg.get_string("title", "");
  const auto var = cfg.get_string("variable", "v");
  if (var == "v") {
    spec.variable = SweepVariable::V;
  } else if (var == "R") {
    spec.variable = SweepVariable::R;
  } else if (var == "s") {
    spec.variable = SweepVariable::S;
  } else {
    throw ConfigError(cfg.source() + ": variable must be v, R or s");
  }
  spec.range.lo = cfg.get_double("lo");
  spec.range.hi = cfg.get_double("hi");
  spec.range.n = cfg.get_count("n", 101);
  spec.fixed_v = cfg.get_double("v", 0.75);
  spec.threads = cfg.get_count("threads", 0);
  if (cfg.has("outputs")) {
    spec.outputs.clear();
    for (const auto& o : cfg.get_list("outputs")) {
      if (o == "attacker") {
        spec.outputs.insert(SweepOutput::Attacker);
      } else if (o == "defender") {
        spec.outputs.insert(SweepOutput::Defender);
      } else if (o == "fixed_points") {
        spec.outputs.insert(SweepOutput::FixedPoints);
      } else if (o == "baseline") {
        spec.outputs.insert(SweepOutput::Baseline);
      } else {
        throw ConfigError(cfg.source() + ": unknown output '" + o + "'");
      }
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.source() + ": " + e.what());
  }
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto grid = numeric::linspace(spec.range.lo, spec.range.hi, spec.range.n);
  switch (spec.variable) {
    case SweepVariable::V: return sweep_v(spec, grid);
    case SweepVariable::S: return sweep_s(spec, grid);
    case SweepVariable::R: return sweep_R(spec, grid);
  }
  throw std::logic_error("unreachable sweep variable");
}

std::size_t RecordTable::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double RecordTable::number(std::size_t row, const std::string& column) const {
  const auto& c = rows.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return kNaN;
}

std::string RecordTable::text(std::size_t row, const std::string& column) const {
  const auto& c = rows.at(row).at(column_index(column));
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return format_number(std::get<double>(c));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void emit_csv(const RecordTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
  finish(out, path);
}

void emit_csv(const FigureBundle& bundle, const std::filesystem::path& path) {
  RecordTable table;
  table.columns.push_back("x");
  for (const auto& s : bundle.series) table.columns.push_back(s.name);
  const std::size_t n = bundle.series.empty() ? 0 : bundle.series.front().x.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Cell> row{bundle.series.front().x[i]};
    for (const auto& s : bundle.series) row.emplace_back(i < s.y.size() ? s.y[i] : kNaN);
    table.rows.push_back(std::move(row));
  }
  emit_csv(table, path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

Cell parse_cell(const std::string& text) {
  if (text.empty()) return kNaN;
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return value;
  return text;
}

}  // namespace

RecordTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  RecordTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  table.columns = split_csv_line(line);
  while (std::getline(in, line)) {
    std::vector<Cell> row;
    for (const auto& f : split_csv_line(line)) row.push_back(parse_cell(f));
    table.rows.push_back(std::move(row));
  }
  return table;
}

double SvgLayout::data_x(double px) const {
  return x_min + (px - plot_left) / (plot_right - plot_left) * (x_max - x_min);
}

double SvgLayout::data_y(double py) const {
  return y_min + (plot_bottom - py) / (plot_bottom - plot_top) * (y_max - y_min);
}

namespace {

std::string px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Tick positions at 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

SvgLayout emit_svg(const FigureBundle& bundle, const std::filesystem::path& path,
                   const std::string& title) {
  if (bundle.series.empty()) throw std::invalid_argument("emit_svg: bundle has no series");

  SvgLayout lay;
  lay.width = 800;
  lay.height = 500;
  lay.plot_left = 70;
  lay.plot_right = 620;
  lay.plot_top = 40;
  lay.plot_bottom = 440;

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : bundle.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      if (!std::isfinite(s.y[i])) continue;
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
  }
  if (xmin == xmax) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!std::isfinite(ymin)) {
    ymin = 0.0;
    ymax = 1.0;
  }
  if (ymin == ymax) {
    const double pad = ymin == 0.0 ? 1.0 : 0.5 * std::fabs(ymin);
    ymin -= pad;
    ymax += pad;
  } else {
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
  }
  lay.x_min = xmin;
  lay.x_max = xmax;
  lay.y_min = ymin;
  lay.y_max = ymax;

  auto sx = [&](double x) {
    return lay.plot_left + (x - xmin) / (xmax - xmin) * (lay.plot_right - lay.plot_left);
  };
  auto sy = [&](double y) {
    return lay.plot_bottom - (y - ymin) / (ymax - ymin) * (lay.plot_bottom - lay.plot_top);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << lay.width << "\" height=\""
      << lay.height << "\" viewBox=\"0 0 " << lay.width << ' ' << lay.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << lay.width << "\" height=\"" << lay.height
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << px((lay.plot_left + lay.plot_right) / 2) << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-size=\"15\">" << xml_escape(title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << px(lay.plot_left) << "\" y1=\"" << px(lay.plot_bottom) << "\" x2=\""
      << px(lay.plot_right) << "\" y2=\"" << px(lay.plot_bottom) << "\"/>\n";
  svg << "<line x1=\"" << px(lay.plot_left) << "\" y1=\"" << px(lay.plot_top) << "\" x2=\""
      << px(lay.plot_left) << "\" y2=\"" << px(lay.plot_bottom) << "\"/>\n";
  svg << "</g>\n<g class=\"ticks\">\n";
  for (double t : nice_ticks(xmin, xmax)) {
    const double x = sx(t);
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << px(lay.plot_bottom) << "\" x2=\"" << px(x)
        << "\" y2=\"" << px(lay.plot_bottom + 5) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << px(x) << "\" y=\"" << px(lay.plot_bottom + 18)
        << "\" text-anchor=\"middle\">" << format_number(t) << "</text>\n";
  }
  for (double t : nice_ticks(ymin, ymax)) {
    const double y = sy(t);
    svg << "<line x1=\"" << px(lay.plot_left - 5) << "\" y1=\"" << px(y) << "\" x2=\""
        << px(lay.plot_left) << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << px(lay.plot_left - 8) << "\" y=\"" << px(y + 4)
        << "\" text-anchor=\"end\">" << format_number(t) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << px((lay.plot_left + lay.plot_right) / 2) << "\" y=\""
      << px(lay.height - 20) << "\" text-anchor=\"middle\">" << xml_escape(bundle.x_label)
      << "</text>\n";
  svg << "<text x=\"16\" y=\"" << px((lay.plot_top + lay.plot_bottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << px((lay.plot_top + lay.plot_bottom) / 2) << ")\">" << xml_escape(bundle.y_label)
      << "</text>\n";

  // Series; NaN gaps split a series into several polylines.
  for (std::size_t k = 0; k < bundle.series.size(); ++k) {
    const auto& s = bundle.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    svg << "<g class=\"series\" data-name=\"" << xml_escape(s.name) << "\">\n";
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\""
            << points << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += px(sx(s.x[i])) + "," + px(sy(s.y[i]));
    }
    flush();
    svg << "</g>\n";
  }

  // Markers.
  for (const auto& m : bundle.markers) {
    if (!m.in_range || !(m.x >= xmin && m.x <= xmax)) {
      lay.omitted_markers.push_back(m.name);
      continue;
    }
    const double x = sx(m.x);
    svg << "<g class=\"marker\" data-name=\"" << xml_escape(m.name) << "\">";
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << px(lay.plot_top) << "\" x2=\"" << px(x)
        << "\" y2=\"" << px(lay.plot_bottom)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>";
    svg << "<text x=\"" << px(x + 3) << "\" y=\"" << px(lay.plot_top + 12) << "\">"
        << xml_escape(m.name) << "</text></g>\n";
  }

  // Legend.
  for (std::size_t k = 0; k < bundle.series.size(); ++k) {
    const double y = lay.plot_top + 10 + 20.0 * static_cast<double>(k);
    const char* color = kPalette[k % std::size(kPalette)];
    svg << "<line x1=\"" << px(lay.plot_right + 15) << "\" y1=\"" << px(y) << "\" x2=\""
        << px(lay.plot_right + 40) << "\" y2=\"" << px(y) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>";
    svg << "<text x=\"" << px(lay.plot_right + 46) << "\" y=\"" << px(y + 4) << "\">"
        << xml_escape(bundle.series[k].name) << "</text>\n";
  }
  svg << "</svg>\n";

  auto out = open_for_write(path);
  out << svg.str();
  finish(out, path);
  return lay;
}

SweepFiles write_sweep(const SweepSpec& spec, const SweepResult& result,
                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  SweepFiles files{out_dir / (spec.name + ".csv"), out_dir / (spec.name + "_figure.csv"),
                   out_dir / (spec.name + ".svg")};
  emit_csv(result.table, files.table_csv);
  emit_csv(result.figure, files.figure_csv);
  emit_svg(result.figure, files.svg, spec.title.empty() ? spec.name : spec.title);
  return files;
}

RecordTable attacker_curve_table(const BreachModel& model, const AttackerParams& attacker,
                                 double v, std::size_t samples) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("attacker curve: v must lie in (0, 1)");
  if (samples < 2) throw std::invalid_argument("attacker curve: samples must be >= 2");
  RecordTable t;
  t.columns = {"s", "z", "y_star", "T_star", "net_gain"};
  for (std::size_t k = 1; k <= samples; ++k) {
    const double s = v * static_cast<double>(k) / static_cast<double>(samples);
    const auto r = best_response(attacker, s);
    t.rows.push_back({s, model.effort(s, v), r.y_star, r.T_star, r.net_gain});
  }
  return t;
}

RecordTable policy_table(const Scenario& scn, const std::vector<double>& v_grid) {
  const DefenderSolver solver(scn);
  RecordTable t;
  t.columns = {"v", "DI", "decision", "s_star", "z_star", "phi_star", "s1", "s2"};
  for (double v : v_grid) {
    const auto sol = solver.solve(v);
    t.rows.push_back({v, to_string(sol.decision_interval), to_string(sol.decision), sol.s_star,
                      sol.z_star, sol.phi_star, opt(sol.s1), opt(sol.s2)});
  }
  return t;
}

RecordTable comparison_table(const Scenario& scn, const std::vector<double>& v_grid) {
  RecordTable t;
  t.columns = {"v", "z_gl", "z_two_sided", "decision", "two_sided_exceeds"};
  for (const auto& r : compare_models(scn, v_grid)) {
    t.rows.push_back({r.v, r.z_gl, r.z_two_sided, to_string(r.decision),
                      r.two_sided_exceeds ? 1.0 : 0.0});
  }
  return t;
}

}  // namespace tsgl
