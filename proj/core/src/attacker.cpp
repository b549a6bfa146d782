#include "tsgl/attacker.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tsgl/numeric.hpp"

namespace tsgl {

namespace {
constexpr double kBoundaryGuard = 1e-12;
}

AttackerParams::AttackerParams(double gain_, double unit_cost_)
    : gain(gain_), unit_cost(unit_cost_) {
  if (!(gain > 0.0) || !(unit_cost > 0.0) || !std::isfinite(gain / unit_cost)) {
    throw std::invalid_argument("attacker parameters require G > 0, c > 0 and finite G/c");
  }
}

double breach_under_attack(double s, double y) {
  if (y == 0.0) return 0.0;
  return -std::expm1(y * std::log1p(-s));
}

double deterrence_threshold(const AttackerParams& params) {
  return -std::expm1(-params.unit_cost / params.gain);
}

double optimal_breach_probability(const AttackerParams& params, double s) {
  const double s_P = deterrence_threshold(params);
  if (s <= s_P || std::fabs(s - s_P) < kBoundaryGuard) return 0.0;
  const double lambda = -std::log1p(-s);
  return 1.0 - 1.0 / (params.gain_to_cost() * lambda);
}

AttackerResponse best_response(const AttackerParams& params, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("best_response: s must lie in (0, 1)");
  AttackerResponse out;
  out.s_P = deterrence_threshold(params);
  if (s <= out.s_P || std::fabs(s - out.s_P) < kBoundaryGuard) return out;

  const double ratio = params.gain_to_cost();
  const double lambda = -std::log1p(-s);
  out.y_star = std::log(ratio * lambda) / lambda;
  out.T_star = 1.0 - 1.0 / (ratio * lambda);
  out.net_gain = params.gain * out.T_star - params.unit_cost * out.y_star;
  return out;
}

PeakEffort peak_effort(const AttackerParams& params) {
  const double ratio = params.gain_to_cost();
  return {-std::expm1(-std::numbers::e / ratio), ratio / std::numbers::e};
}

DeterrencePrice price_of_deterrence(const BreachModel& model, const AttackerParams& params,
                                    double v) {
  const double s_P = deterrence_threshold(params);
  if (v <= s_P) return {0.0, false};
  return {model.effort(s_P, v), true};
}

}  // namespace tsgl
