#pragma once

#include "tsgl/attacker.hpp"
#include "tsgl/breach_model.hpp"

namespace tsgl {

/// Defender economics: loss L on a breach, cost d per unit of mitigation effort.
struct DefenderParams {
  double loss = 1.0;
  double unit_cost = 1.0;

  DefenderParams() = default;
  DefenderParams(double loss, double unit_cost);
};

/// A breach model plus both parties' economics. R = (L/d) / (G/c).
class Scenario {
 public:
  Scenario(BreachModel model, AttackerParams attacker, DefenderParams defender);

  const BreachModel& model() const noexcept { return model_; }
  const AttackerParams& attacker() const noexcept { return attacker_; }
  const DefenderParams& defender() const noexcept { return defender_; }
  /// Effective loss-to-gain ratio.
  double R() const noexcept { return ratio_; }

  /// Same model and attacker, with L rescaled so that the ratio equals r.
  Scenario with_ratio(double r) const;

 private:
  BreachModel model_;
  AttackerParams attacker_;
  DefenderParams defender_;
  double ratio_;
};

}  // namespace tsgl
