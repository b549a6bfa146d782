#include "tsgl/breach_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsgl/numeric.hpp"

namespace tsgl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Smallest log-argument before exp() underflows to zero.
constexpr double kLogUnderflow = -745.0;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

double horner(const std::vector<double>& coeffs, double s) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}

// Three-point Simpson on [a, b].
template <class F>
double simpson3(F&& f, double a, double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::GLClassI: return "gl1";
    case Family::GLClassII: return "gl2";
    case Family::CustomGamma: return "custom";
  }
  return "unknown";
}

std::string to_string(GammaTag tag) {
  switch (tag) {
    case GammaTag::Gamma1: return "Gamma1";
    case GammaTag::Gamma2: return "Gamma2";
    case GammaTag::GammaGeneral: return "GammaGeneral";
    case GammaTag::Invalid: return "Invalid";
  }
  return "unknown";
}

/*
 * Tabulation over u = log s on [log 1e-12, 0]:
 *   I(u)   = integral_u^0 (1 + gamma(e^w)) dw        so  log g = log alpha - I
 *   Psi(u) = integral_u^0 e^w / g(e^w) dw            so  Z = f(v) (Psi(log s) - Psi(log v))
 * Values between nodes add a three-point Simpson over the partial panel.
 * Below the table the integrands follow their s -> 0 power law with
 * exponent fixed by gamma(0).
 */
struct BreachModel::CustomTable {
  static constexpr std::size_t kPanels = 4096;
  double u_min = std::log(1e-12);
  double h = -u_min / static_cast<double>(kPanels);
  double log_alpha = 0.0;
  double k0 = 1.0;  // 1 + gamma(0)
  GammaProfile gamma;
  std::vector<double> I;
  std::vector<double> Psi;

  double integrand_I(double w) const { return 1.0 + gamma(std::exp(w)); }

  std::size_t panel(double u) const {
    const double pos = (u - u_min) / h;
    auto i = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
    return std::min(i, kPanels - 1);
  }

  double node(std::size_t i) const {
    return i == kPanels ? 0.0 : u_min + h * static_cast<double>(i);
  }

  double eval_I(double u) const {
    if (u >= 0.0) return -simpson3([&](double w) { return integrand_I(w); }, 0.0, u);
    if (u < u_min) return I[0] + k0 * (u_min - u);
    const std::size_t i = panel(u);
    const double top = node(i + 1);
    return I[i + 1] + simpson3([&](double w) { return integrand_I(w); }, u, top);
  }

  double integrand_Psi(double w) const { return std::exp(w - log_alpha + eval_I(w)); }

  double eval_Psi(double u) const {
    if (u == -kInf) return k0 >= 1.0 ? kInf : Psi[0] + integrand_Psi(u_min) / (1.0 - k0);
    if (u >= 0.0) return -simpson3([&](double w) { return integrand_Psi(w); }, 0.0, u);
    if (u < u_min) {
      // integrand = A exp((1 - k0) w) below the table
      const double a = std::exp(-log_alpha + I[0] + k0 * u_min);
      if (std::fabs(1.0 - k0) < 1e-14) return Psi[0] + a * (u_min - u);
      const double r = 1.0 - k0;
      return Psi[0] + a * (std::exp(r * u_min) - std::exp(r * u)) / r;
    }
    const std::size_t i = panel(u);
    const double top = node(i + 1);
    return Psi[i + 1] + simpson3([&](double w) { return integrand_Psi(w); }, u, top);
  }

  void build() {
    I.assign(kPanels + 1, 0.0);
    Psi.assign(kPanels + 1, 0.0);
    for (std::size_t i = kPanels; i-- > 0;) {
      I[i] = I[i + 1] + simpson3([&](double w) { return integrand_I(w); }, node(i), node(i + 1));
    }
    for (std::size_t i = kPanels; i-- > 0;) {
      const double a = node(i);
      const double b = node(i + 1);
      const double m = 0.5 * (a + b);
      const double pa = std::exp(a - log_alpha + I[i]);
      const double pb = std::exp(b - log_alpha + I[i + 1]);
      const double im = I[i + 1] + simpson3([&](double w) { return integrand_I(w); }, m, b);
      const double pm = std::exp(m - log_alpha + im);
      Psi[i] = Psi[i + 1] + (b - a) / 6.0 * (pa + 4.0 * pm + pb);
    }
  }
};

BreachModel BreachModel::gl_class1(double alpha, double beta) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  BreachModel m;
  m.family_ = Family::GLClassI;
  m.alpha_ = alpha;
  m.beta_ = beta;
  return m;
}

BreachModel BreachModel::gl_class2(double alpha) {
  require_positive(alpha, "alpha");
  BreachModel m;
  m.family_ = Family::GLClassII;
  m.alpha_ = alpha;
  m.beta_ = kNaN;
  return m;
}

BreachModel BreachModel::custom(double alpha, GammaProfile gamma) {
  require_positive(alpha, "alpha");
  if (!gamma) throw std::invalid_argument("custom model requires a gamma profile");
  BreachModel m;
  m.family_ = Family::CustomGamma;
  m.alpha_ = alpha;
  m.beta_ = kNaN;
  m.gamma_ = gamma;
  auto table = std::make_shared<CustomTable>();
  table->log_alpha = std::log(alpha);
  table->gamma = std::move(gamma);
  table->k0 = 1.0 + table->gamma(0.0);
  table->build();
  m.table_ = std::move(table);
  return m;
}

BreachModel BreachModel::custom_polynomial(double alpha, std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("gamma polynomial needs at least one coefficient");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("gamma polynomial coefficients must be finite");
  }
  auto m = custom(alpha, [coeffs](double s) { return horner(coeffs, s); });
  m.gamma_coeffs_ = std::move(coeffs);
  return m;
}

double BreachModel::custom_log_g(double s) const {
  return table_->log_alpha - table_->eval_I(std::log(s));
}

double BreachModel::custom_log_f(double v) const {
  const double u = std::log(v);
  return -(table_->eval_I(u) + u);
}

double BreachModel::custom_psi(double s) const { return table_->eval_Psi(std::log(s)); }

double BreachModel::breach_probability(double z, double v) const {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("breach_probability: v must lie in [0, 1]");
  if (!(z >= 0.0)) throw DomainError("breach_probability: effort z must be non-negative");
  if (v == 0.0) return 0.0;
  if (z == 0.0) return v;

  switch (family_) {
    case Family::GLClassI:
      return v * std::exp(-beta_ * std::log1p(alpha_ * z));
    case Family::GLClassII:
      return std::exp((alpha_ * z + 1.0) * std::log(v));
    case Family::CustomGamma:
      break;
  }

  // Solve Psi(u) = Psi(log v) + z / f(v) for u <= log v; Psi decreases in u.
  const double uv = std::log(v);
  const double fv = std::exp(custom_log_f(v));
  const double target = custom_psi(v) + z / fv;
  auto residual = [&](double u) { return table_->eval_Psi(u) - target; };

  double hi = uv;
  double lo = uv - 1.0;
  double step = 1.0;
  while (residual(lo) < 0.0) {
    hi = lo;
    step *= 2.0;
    lo -= step;
    if (lo < kLogUnderflow) {
      if (residual(kLogUnderflow) < 0.0) return 0.0;
      lo = kLogUnderflow;
      break;
    }
  }

  // Safeguarded Newton: dPsi/du = -e^u / g(e^u).
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double r = residual(u);
    if (r == 0.0) break;
    if (r > 0.0) lo = u; else hi = u;
    const double slope = -table_->integrand_Psi(u);
    double next = u - r / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::fabs(next - u) <= 4.0 * kEps * std::max(1.0, std::fabs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  return std::min(v, std::exp(u));
}

double BreachModel::breach_slope(double z, double v) const {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("breach_slope: v must lie in [0, 1]");
  if (!(z >= 0.0)) throw DomainError("breach_slope: effort z must be non-negative");
  if (v == 0.0) return 0.0;
  switch (family_) {
    case Family::GLClassI:
      return -alpha_ * beta_ * v * std::exp(-(beta_ + 1.0) * std::log1p(alpha_ * z));
    case Family::GLClassII:
      return alpha_ * std::log(v) * std::exp((alpha_ * z + 1.0) * std::log(v));
    case Family::CustomGamma: {
      const double s = breach_probability(z, v);
      if (s <= 0.0) return 0.0;
      return -std::exp(custom_log_g(s) - custom_log_f(v));
    }
  }
  return kNaN;
}

double BreachModel::effort(double s, double v) const {
  if (!(v > 0.0 && v <= 1.0)) throw DomainError("effort: v must lie in (0, 1]");
  if (!(s > 0.0)) throw DomainError("effort: s must be positive");
  if (s > v) throw DomainError("effort: s exceeds v; effort cannot increase vulnerability");
  if (s == v) return 0.0;

  switch (family_) {
    case Family::GLClassI:
      return std::expm1(std::log(v / s) / beta_) / alpha_;
    case Family::GLClassII: {
      const double lv = std::log(v);
      if (lv == 0.0) throw DomainError("effort: GL Class II cannot reduce s below v = 1");
      return std::log(s / v) / (alpha_ * lv);
    }
    case Family::CustomGamma:
      return std::exp(custom_log_f(v)) * (custom_psi(s) - custom_psi(v));
  }
  return kNaN;
}

MarginalFactors BreachModel::marginal_factors(double s, double v) const {
  if (!(s > 0.0 && s < 1.0) || !(v > 0.0 && v < 1.0)) {
    throw DomainError("marginal_factors: s and v must lie in (0, 1)");
  }
  return {f(v), g(s)};
}

double BreachModel::f(double v) const {
  if (!(v > 0.0 && v <= 1.0)) throw DomainError("f: v must lie in (0, 1]");
  switch (family_) {
    case Family::GLClassI: return std::pow(v, 1.0 / beta_);
    case Family::GLClassII: return v == 1.0 ? kInf : -1.0 / std::log(v);
    case Family::CustomGamma: return std::exp(custom_log_f(v));
  }
  return kNaN;
}

double BreachModel::f_inverse(double target) const {
  if (!(target > 0.0)) return kNaN;
  switch (family_) {
    case Family::GLClassI:
      return target <= 1.0 ? std::pow(target, beta_) : kNaN;
    case Family::GLClassII:
      return std::isinf(target) ? 1.0 : std::exp(-1.0 / target);
    case Family::CustomGamma: {
      const double lt = std::log(target);
      if (lt > 0.0) return kNaN;  // f(1) = 1
      auto r = numeric::bisect([&](double u) { return custom_log_f(std::exp(u)) - lt; },
                               kLogUnderflow + 1.0, 0.0, 1e-15, 400);
      return r.converged ? std::exp(r.root) : kNaN;
    }
  }
  return kNaN;
}

double BreachModel::g(double s) const {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("g: s must lie in (0, 1]");
  switch (family_) {
    case Family::GLClassI: return alpha_ * beta_ * std::pow(s, (beta_ + 1.0) / beta_);
    case Family::GLClassII: return alpha_ * s;
    case Family::CustomGamma: return std::exp(custom_log_g(s));
  }
  return kNaN;
}

double BreachModel::gamma(double s) const {
  switch (family_) {
    case Family::GLClassI: return 1.0 / beta_;
    case Family::GLClassII: return 0.0;
    case Family::CustomGamma: return gamma_(s);
  }
  return kNaN;
}

GammaClass classify_gamma(const BreachModel& model, std::size_t grid_size) {
  if (grid_size < 64) throw std::invalid_argument("classify_gamma: grid_size must be >= 64");
  const auto grid = numeric::interior_grid(0.0, 1.0, grid_size);
  std::vector<double> vals;
  vals.reserve(grid.size());
  for (double s : grid) vals.push_back(model.gamma(s));

  GammaClass out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!(vals[i] >= 0.0)) {
      out.reason = "gamma < 0 at s=" + std::to_string(grid[i]);
      return out;
    }
  }

  constexpr double kMonoTol = 1e-12;
  auto nondecreasing_upto = [&](std::size_t end) {
    for (std::size_t i = 1; i < end; ++i) {
      if (vals[i] < vals[i - 1] - kMonoTol) return false;
    }
    return true;
  };

  const auto first_above =
      std::find_if(vals.begin(), vals.end(), [](double g) { return g > 1.0; });
  if (first_above == vals.end()) {
    if (!nondecreasing_upto(vals.size())) {
      out.reason = "gamma <= 1 but decreasing";
      return out;
    }
    out.tag = GammaTag::Gamma1;
    return out;
  }

  const auto k = static_cast<std::size_t>(first_above - vals.begin());
  for (std::size_t i = k; i < vals.size(); ++i) {
    if (vals[i] <= 1.0) {
      out.reason = "gamma re-enters [0, 1] after exceeding 1";
      return out;
    }
  }
  if (k == 0) {
    out.tag = GammaTag::Gamma2;
    return out;
  }
  if (!nondecreasing_upto(k)) {
    out.reason = "gamma <= 1 but decreasing before the crossover";
    return out;
  }
  auto root = numeric::bisect([&](double s) { return model.gamma(s) - 1.0; }, grid[k - 1],
                              grid[k], 1e-14, 200);
  out.tag = GammaTag::GammaGeneral;
  out.crossover = root.root;
  return out;
}

bool AssumptionReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const AssumptionCheck* AssumptionReport::find(const std::string& id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

class CheckBuilder {
 public:
  CheckBuilder(std::string id, std::string description) {
    check_.id = std::move(id);
    check_.description = std::move(description);
  }

  // violation_amount > 0 means the point violates the assumption.
  void record(double violation_amount) {
    ++check_.points_checked;
    if (std::isnan(violation_amount) || violation_amount > 0.0) {
      ++check_.violations;
      check_.passed = false;
      if (std::isnan(violation_amount) || violation_amount > check_.worst) {
        check_.worst = violation_amount;
      }
    }
  }

  AssumptionCheck done() { return std::move(check_); }

 private:
  AssumptionCheck check_;
};

}  // namespace

AssumptionReport validate_assumptions(const BreachModel& model, std::size_t grid_size) {
  if (grid_size < 64) throw std::invalid_argument("validate_assumptions: grid_size must be >= 64");

  // 1-D checks use the full grid; 2-D (s, v) checks use grid_size/4 per axis.
  const auto grid1 = numeric::interior_grid(0.0, 1.0, grid_size);
  const std::size_t n2 = std::max<std::size_t>(16, grid_size / 4);
  const auto v_grid = numeric::interior_grid(0.0, 1.0, n2);
  const auto t_grid = numeric::interior_grid(0.0, 1.0, n2, 1e-3);
  const double alpha = model.alpha();

  CheckBuilder a1("A1", "S(z, 0) = 0");
  CheckBuilder a2("A2", "S(0, v) = v");
  CheckBuilder a3("A3", "S_z < 0");
  CheckBuilder a4("A4", "S_zz > 0");
  CheckBuilder a5("A5", "S(z, v) -> 0 as z -> inf");
  CheckBuilder a6("A6", "S_v > 0");
  CheckBuilder zss("Z_ss", "Z_ss > 0 (convex effort)");
  CheckBuilder zsv("Z_sv", "Z_sv < 0 (effort complementarity)");
  CheckBuilder factored("factored_form", "Z_s = -f(v)/g(s)");
  CheckBuilder positivity("positivity", "f(v) > 0 and g(s) > 0");
  CheckBuilder logconvex("log_convexity", "gamma(s) >= 0");

  for (double s : grid1) {
    logconvex.record(-model.gamma(s));
    positivity.record(std::max(-model.f(s), -model.g(s)));
  }

  for (double v : v_grid) {
    a2.record(std::fabs(model.breach_probability(0.0, v) - v) - 4.0 * kEps * v);

    double prev = v;
    bool monotone = true;
    double last = v;
    for (int k = 0; k <= 12; ++k) {
      last = model.breach_probability(std::pow(10.0, k) / alpha, v);
      if (last > prev) monotone = false;
      prev = last;
    }
    a5.record(monotone ? last - 1e-3 * v : 1.0);

    auto S_of_z = [&](double z) { return model.breach_probability(z, v); };

    for (double t : t_grid) {
      const double s = t * v;
      const double z = model.effort(s, v);
      a1.record(std::fabs(model.breach_probability(z, 0.0)));

      // Noise floors: first differences ~ eps |S| / h, second ~ eps |S| / h^2.
      const double hz = numeric::fd_step(z);
      const double sz = numeric::central_diff(S_of_z, z, 0.0);
      a3.record(sz - 64.0 * kEps * s / hz);
      const double szz = numeric::central_diff2(S_of_z, z, 0.0);
      a4.record(-szz - 64.0 * kEps * s / (hz * hz));

      auto S_of_v = [&](double vv) { return model.breach_probability(z, vv); };
      const double sv = numeric::central_diff(S_of_v, v, 0.0, 1.0);
      a6.record(-sv + 64.0 * kEps * s / numeric::fd_step(v));

      auto Z_of_s = [&](double ss) { return model.effort(ss, v); };
      const double hs = numeric::fd_step(s);
      if (s - hs > 0.0 && s + hs <= v) {
        if (s >= 100.0 * hs) {
          const double zs = numeric::richardson_diff(Z_of_s, s, 0.0, v);
          const double fg = model.f(v) / model.g(s);
          factored.record(std::fabs(zs + fg) - 1e-6 * std::max(1.0, fg));
        }
        const double z2 = numeric::central_diff2(Z_of_s, s, 0.0, v);
        zss.record(-z2 - 64.0 * kEps * (z + 1.0) / (hs * hs));
      }

      const double hv = numeric::fd_step(v);
      if (s - hs > 0.0 && s + hs <= v - hv && v + hv < 1.0) {
        const double mixed = (model.effort(s + hs, v + hv) - model.effort(s + hs, v - hv) -
                              model.effort(s - hs, v + hv) + model.effort(s - hs, v - hv)) /
                             (4.0 * hs * hv);
        zsv.record(mixed - 64.0 * kEps * (z + 1.0) / (hs * hv));
      }
    }
  }

  AssumptionReport report;
  for (auto* b : {&a1, &a2, &a3, &a4, &a5, &a6, &zss, &zsv, &factored, &positivity, &logconvex}) {
    report.checks.push_back(b->done());
  }
  return report;
}

}  // namespace tsgl
