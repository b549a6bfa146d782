#include "tsgl/defender.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsgl/numeric.hpp"

namespace tsgl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClamp = 1e-12;     // near-boundary evaluation clamp
constexpr double kShapeEps = 1e-9;   // bracket for the root of H
constexpr double kRootTol = 1e-10;
constexpr std::size_t kMaxIter = 200;

double clamp_unit(double s) { return std::clamp(s, kClamp, 1.0 - kClamp); }

// (1 - s) log^2(1 - s)
double xi_numerator(double s) {
  const double l = std::log1p(-s);
  return (1.0 - s) * l * l;
}

}  // namespace

std::string to_string(ShapeKind kind) {
  return kind == ShapeKind::InvertedU ? "InvertedU" : "StrictlyDecreasing";
}

std::string to_string(DecisionInterval di) {
  switch (di) {
    case DecisionInterval::DI1: return "DI1";
    case DecisionInterval::DI2: return "DI2";
    case DecisionInterval::DI3: return "DI3";
  }
  return "?";
}

std::string to_string(Decision decision) {
  switch (decision) {
    case Decision::AllIn: return "AllIn";
    case Decision::Some: return "Some";
    case Decision::None: return "None";
  }
  return "?";
}

DefenderParams::DefenderParams(double loss_, double unit_cost_)
    : loss(loss_), unit_cost(unit_cost_) {
  if (!(loss > 0.0) || !(unit_cost > 0.0) || !std::isfinite(loss) || !std::isfinite(unit_cost)) {
    throw std::invalid_argument("defender parameters require L > 0 and d > 0");
  }
}

Scenario::Scenario(BreachModel model, AttackerParams attacker, DefenderParams defender)
    : model_(std::move(model)),
      attacker_(attacker),
      defender_(defender),
      ratio_((defender.loss / defender.unit_cost) / attacker.gain_to_cost()) {}

Scenario Scenario::with_ratio(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("with_ratio: R must be positive");
  DefenderParams d{r * defender_.unit_cost * attacker_.gain_to_cost(), defender_.unit_cost};
  return Scenario(model_, attacker_, d);
}

double universal_xi(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  if (s < 1e-5) return s - s * s * s / 12.0;
  return xi_numerator(s) / s;
}

XiPeak universal_xi_peak() {
  static const XiPeak peak = [] {
    // xi'(s) = -log(1-s) (2s + log(1-s)) / s^2.
    const auto r = numeric::bisect([](double s) { return 2.0 * s + std::log1p(-s); }, 0.5, 0.99, 1e-15, 200);
    return XiPeak{r.root, universal_xi(r.root)};
  }();
  return peak;
}

double objective(const Scenario& scn, double s, double v) {
  if (s > v) throw DomainError("objective: s exceeds v");
  if (!(v > 0.0 && v <= 1.0)) throw DomainError("objective: v must lie in (0, 1]");
  const double sc = std::min(clamp_unit(s), v);
  const double loss = scn.defender().loss * optimal_breach_probability(scn.attacker(), sc);
  return loss + scn.defender().unit_cost * scn.model().effort(sc, v);
}

double gradient_function(const Scenario& scn, double s) {
  const double sc = clamp_unit(s);
  return xi_numerator(sc) / scn.model().g(sc);
}

double hessian_surrogate(const Scenario& scn, double s) {
  const double sc = clamp_unit(s);
  const double gamma = scn.model().gamma(sc);
  // -(2/log(1-s) + 1/s) = 1/s - 1 - s/6 - s^2/12 - 19 s^3/360 - ...
  if (sc < 1e-4) {
    const double tail = -sc / 6.0 - sc * sc / 12.0 - 19.0 * sc * sc * sc / 360.0;
    return (1.0 - gamma) * (1.0 / sc - 1.0) + tail;
  }
  const double bracket = -(2.0 / std::log1p(-sc) + 1.0 / sc);
  return bracket - gamma * (1.0 / sc - 1.0);
}

GradientShape classify_gradient_shape(const Scenario& scn) {
  GradientShape out;
  out.gamma_class = classify_gamma(scn.model());
  if (out.gamma_class.tag == GammaTag::Invalid) {
    throw ClassificationError("gamma profile is outside the admissible class: " +
                              out.gamma_class.reason);
  }

  const double gamma0 = scn.model().gamma(0.0);
  if (gamma0 > 1.0) {
    out.kind = ShapeKind::StrictlyDecreasing;
    out.s_hat = 0.0;
    out.D_hat = kInf;
    return out;
  }

  out.kind = ShapeKind::InvertedU;
  auto H = [&](double s) { return hessian_surrogate(scn, s); };
  if (H(kShapeEps) <= 0.0) {
    // gamma(0) = 1: the peak sits at the origin.
    out.s_hat = 0.0;
    out.D_hat = gradient_function(scn, kShapeEps);
    return out;
  }
  const auto root = numeric::bisect(H, kShapeEps, 1.0 - kShapeEps, kRootTol, kMaxIter);
  if (!root.converged && std::isnan(root.root)) {
    throw ClassificationError("H(s; gamma) has no sign change on (0, 1)");
  }
  out.s_hat = root.root;
  out.D_hat = gradient_function(scn, out.s_hat);
  return out;
}

DefenderSolver::DefenderSolver(Scenario scn)
    : scn_(std::move(scn)),
      shape_(classify_gradient_shape(scn_)),
      s_P_(deterrence_threshold(scn_.attacker())) {
  if (shape_.kind == ShapeKind::StrictlyDecreasing) {
    v_hat_ = {0.0, false};
  } else {
    const double v = scn_.model().f_inverse(scn_.R() / shape_.D_hat);
    if (std::isnan(v) || v >= 1.0) {
      v_hat_ = {1.0, true};
    } else {
      v_hat_ = {v, false};
    }
  }
}

StationaryPoints DefenderSolver::stationary_points(double v) const {
  StationaryPoints out;
  if (v_hat_.clamped || v < v_hat_.value) return out;

  const double target = scn_.R() / scn_.model().f(v);
  auto residual = [&](double s) { return gradient_function(scn_, s) - target; };

  if (shape_.kind == ShapeKind::StrictlyDecreasing) {
    if (residual(kClamp) <= 0.0) {
      out.s1 = kClamp;
    } else if (residual(1.0 - kClamp) >= 0.0) {
      out.s1 = 1.0 - kClamp;
    } else {
      out.s1 = numeric::bisect(residual, kClamp, 1.0 - kClamp, kRootTol, kMaxIter).root;
    }
    return out;
  }

  if (target >= shape_.D_hat) {
    out.s1 = shape_.s_hat;
    if (shape_.s_hat > 0.0) out.s2 = shape_.s_hat;
    return out;
  }

  const double peak = std::max(shape_.s_hat, kShapeEps);
  // D vanishes at 1; a root beyond the clamp is reported at the clamp.
  out.s1 = residual(1.0 - kClamp) >= 0.0
               ? 1.0 - kClamp
               : numeric::bisect(residual, peak, 1.0 - kClamp, kRootTol, kMaxIter).root;
  if (shape_.s_hat > 0.0 && residual(kClamp) < 0.0) {
    out.s2 = numeric::bisect(residual, kClamp, shape_.s_hat, kRootTol, kMaxIter).root;
  }
  return out;
}

std::optional<double> DefenderSolver::s1(double v) const { return stationary_points(v).s1; }

DecisionInterval DefenderSolver::decision_interval(double v) const {
  if (v_hat_.clamped || v <= v_hat_.value) return DecisionInterval::DI1;
  const auto s1v = s1(v);
  if (!s1v || v <= *s1v) return DecisionInterval::DI2;
  return DecisionInterval::DI3;
}

DefenderSolution DefenderSolver::solve(double v) const {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("solve_defender: v must lie in (0, 1)");

  DefenderSolution out;
  out.s_P = s_P_;
  out.v_hat = v_hat_.value;
  const auto sp = stationary_points(v);
  out.s1 = sp.s1;
  out.s2 = sp.s2;
  out.decision_interval = decision_interval(v);
  out.decision = Decision::AllIn;

  if (v <= s_P_) {
    // No attack at zero effort: "all in" is the bare minimum.
    out.s_star = v;
    out.z_star = 0.0;
    out.phi_star = 0.0;
    return out;
  }

  const double phi_all_in = objective(scn_, s_P_, v);
  double alt_s = s_P_;
  Decision alt = Decision::AllIn;
  switch (out.decision_interval) {
    case DecisionInterval::DI1:
      break;
    case DecisionInterval::DI2:
      alt_s = v;
      alt = Decision::None;
      break;
    case DecisionInterval::DI3:
      alt_s = *sp.s1;
      alt = Decision::Some;
      break;
  }

  out.s_star = s_P_;
  out.phi_star = phi_all_in;
  if (alt != Decision::AllIn) {
    const double phi_alt = objective(scn_, alt_s, v);
    // Ties go to deterrence.
    if (phi_alt < phi_all_in) {
      out.decision = alt;
      out.s_star = alt_s;
      out.phi_star = phi_alt;
    }
  }
  out.z_star = scn_.model().effort(out.s_star, v);
  return out;
}

VHat v_hat(const Scenario& scn) { return DefenderSolver(scn).v_hat(); }

StationaryPoints stationary_points(const Scenario& scn, double v) {
  return DefenderSolver(scn).stationary_points(v);
}

DefenderSolution solve_defender(const Scenario& scn, double v) {
  return DefenderSolver(scn).solve(v);
}

}  // namespace tsgl
