#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "tsgl/scenario.hpp"

namespace tsgl {

/// gamma(s) falls outside the class for which the gradient-shape results hold.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ShapeKind { InvertedU, StrictlyDecreasing };
enum class DecisionInterval { DI1, DI2, DI3 };
enum class Decision { AllIn, Some, None };

std::string to_string(ShapeKind kind);
std::string to_string(DecisionInterval di);
std::string to_string(Decision decision);

struct GradientShape {
  ShapeKind kind = ShapeKind::InvertedU;
  double s_hat = 0.0;
  double D_hat = 0.0;  // +inf for StrictlyDecreasing
  GammaClass gamma_class;
};

struct VHat {
  double value = 0.0;
  /// Set when R / D_hat exceeds the range of f: no v in (0, 1) admits stationary points.
  bool clamped = false;
};

struct StationaryPoints {
  std::optional<double> s2;  // local maximum of the objective, s2 <= s_hat
  std::optional<double> s1;  // local minimum, s1 >= s_hat
};

struct DefenderSolution {
  DecisionInterval decision_interval = DecisionInterval::DI1;
  Decision decision = Decision::AllIn;
  double s_star = 0.0;
  double z_star = 0.0;
  double phi_star = 0.0;
  std::optional<double> s1;
  std::optional<double> s2;
  double s_P = 0.0;
  double v_hat = 0.0;
};

/// xi(s) = (1 - s) log^2(1 - s) / s, extended by 0 at both ends.
double universal_xi(double s);

struct XiPeak {
  double s_xi = 0.0;
  double xi_hat = 0.0;
};

/// Location and value of the maximum of xi on (0, 1).
XiPeak universal_xi_peak();

/*
 * Phi(s, v) = L T*(s) + d Z(s, v). Below the deterrence threshold T* = 0 so
 * only the effort term remains.
 */
double objective(const Scenario& scn, double s, double v);

/// D(s) = (1 - s) log^2(1 - s) / g(s).
double gradient_function(const Scenario& scn, double s);

/// H(s; gamma), which carries the sign of D'(s).
double hessian_surrogate(const Scenario& scn, double s);

GradientShape classify_gradient_shape(const Scenario& scn);
VHat v_hat(const Scenario& scn);
StationaryPoints stationary_points(const Scenario& scn, double v);
DefenderSolution solve_defender(const Scenario& scn, double v);

/*
 * Caches the v-independent analysis (gradient shape, v_hat, s_P) of a
 * scenario. Immutable after construction and safe to share across threads.
 */
class DefenderSolver {
 public:
  explicit DefenderSolver(Scenario scn);

  const Scenario& scenario() const noexcept { return scn_; }
  const GradientShape& shape() const noexcept { return shape_; }
  const VHat& v_hat() const noexcept { return v_hat_; }
  double s_P() const noexcept { return s_P_; }

  StationaryPoints stationary_points(double v) const;
  /// s1(v) alone; absent when v < v_hat.
  std::optional<double> s1(double v) const;
  DecisionInterval decision_interval(double v) const;
  DefenderSolution solve(double v) const;

 private:
  Scenario scn_;
  GradientShape shape_;
  VHat v_hat_;
  double s_P_;
};

}  // namespace tsgl
