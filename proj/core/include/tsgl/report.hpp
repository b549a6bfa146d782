#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tsgl/attacker.hpp"
#include "tsgl/config.hpp"
#include "tsgl/scenario.hpp"

namespace tsgl {

enum class SweepVariable { V, R, S };
enum class SweepOutput { Attacker, Defender, FixedPoints, Baseline };

struct SweepRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;
};

/*
 * A one-dimensional study. Sweeping v solves the game at every initial
 * vulnerability; sweeping s traces attacker response and objective at
 * fixed_v; sweeping R rescales L and tracks the fixed-point structure.
 */
struct SweepSpec {
  explicit SweepSpec(Scenario scn) : scenario(std::move(scn)) {}

  Scenario scenario;
  SweepVariable variable = SweepVariable::V;
  SweepRange range;
  std::set<SweepOutput> outputs{SweepOutput::Attacker, SweepOutput::Defender};
  double fixed_v = 0.75;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::string name = "sweep";
  std::string title;

  /// Throws std::invalid_argument on an unusable range or output set.
  void validate() const;
};

/// Scenario keys plus variable, lo, hi, n, outputs, v, threads, name, title.
SweepSpec sweep_spec_from_config(const KeyValueConfig& cfg);
const std::vector<std::string>& sweep_keys();

/// A CSV cell; NaN doubles are written as empty fields.
using Cell = std::variant<double, std::string>;

struct RecordTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column_index(const std::string& name) const;  // throws std::out_of_range
  double number(std::size_t row, const std::string& column) const;
  std::string text(std::size_t row, const std::string& column) const;
};

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Marker {
  std::string name;
  double x = 0.0;
  bool in_range = true;
};

struct FigureBundle {
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<Marker> markers;
};

struct SweepResult {
  FigureBundle figure;
  RecordTable table;
};

/// Deterministic for a given spec regardless of thread count.
SweepResult run_sweep(const SweepSpec& spec);

/// Header row then records, numbers at 12 significant digits.
void emit_csv(const RecordTable& table, const std::filesystem::path& path);
/// Series as columns: the first series' x, then one column per series.
void emit_csv(const FigureBundle& bundle, const std::filesystem::path& path);
RecordTable read_csv(const std::filesystem::path& path);

struct SvgLayout {
  double width = 0.0;
  double height = 0.0;
  double plot_left = 0.0;
  double plot_right = 0.0;
  double plot_top = 0.0;
  double plot_bottom = 0.0;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  std::vector<std::string> omitted_markers;

  double data_x(double px) const;
  double data_y(double py) const;
};

/// Standalone line chart: one polyline per series, ticks, legend, vertical markers.
SvgLayout emit_svg(const FigureBundle& bundle, const std::filesystem::path& path,
                   const std::string& title);

std::string format_number(double x);

struct SweepFiles {
  std::filesystem::path table_csv;
  std::filesystem::path figure_csv;
  std::filesystem::path svg;
};

/// Writes <name>.csv, <name>_figure.csv and <name>.svg into out_dir (created if missing).
SweepFiles write_sweep(const SweepSpec& spec, const SweepResult& result,
                       const std::filesystem::path& out_dir);

/// s on (0, v] in `samples` equal steps: s, z, y_star, T_star, net_gain.
RecordTable attacker_curve_table(const BreachModel& model, const AttackerParams& attacker,
                                 double v, std::size_t samples);

/// v, DI, decision, s_star, z_star, phi_star, s1, s2.
RecordTable policy_table(const Scenario& scn, const std::vector<double>& v_grid);

/// v, z_gl, z_two_sided, decision, two_sided_exceeds.
RecordTable comparison_table(const Scenario& scn, const std::vector<double>& v_grid);

}  // namespace tsgl
