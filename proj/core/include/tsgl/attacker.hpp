#pragma once

#include <optional>

#include "tsgl/breach_model.hpp"

namespace tsgl {

/// Attacker economics: gain G on a successful breach, cost c per attempt.
struct AttackerParams {
  double gain = 1.0;
  double unit_cost = 1.0;

  AttackerParams() = default;
  AttackerParams(double gain, double unit_cost);

  double gain_to_cost() const noexcept { return gain / unit_cost; }
};

struct AttackerResponse {
  double s_P = 0.0;       // deterrence threshold
  double y_star = 0.0;    // optimal number of attempts
  double T_star = 0.0;    // breach probability under optimal attack
  double net_gain = 0.0;  // G T* - c y*
};

struct PeakEffort {
  double s_plus = 0.0;
  double y_plus = 0.0;
};

struct DeterrencePrice {
  double z_P = 0.0;
  /// False when v <= s_P: the attacker is already deterred at zero effort.
  bool deterrence_needed = true;
};

/// T(s, y) = 1 - (1 - s)^y.
double breach_under_attack(double s, double y);

/// s_P = 1 - exp(-c/G).
double deterrence_threshold(const AttackerParams& params);

/*
 * Closed-form maximiser of G T(s, y) - c y over y >= 0. For s > s_P,
 * y* = log((G/c) lambda) / lambda with lambda = -log(1 - s), and
 * T* = 1 - 1 / ((G/c) lambda). At or below s_P the attacker abstains.
 */
AttackerResponse best_response(const AttackerParams& params, double s);

/// T*(s) alone; zero at or below s_P.
double optimal_breach_probability(const AttackerParams& params, double s);

/// Maximum of y*(s) over s: s_+ = 1 - exp(-e c/G), y_+ = (G/c)/e.
PeakEffort peak_effort(const AttackerParams& params);

/// Defender effort z_P = Z(s_P, v) that fully deters the attacker.
DeterrencePrice price_of_deterrence(const BreachModel& model, const AttackerParams& params,
                                    double v);

}  // namespace tsgl
