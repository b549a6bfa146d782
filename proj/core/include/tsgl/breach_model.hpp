#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tsgl {

enum class Family { GLClassI, GLClassII, CustomGamma };

std::string to_string(Family family);

/// Log-convexity profile gamma(s) on [0, 1].
using GammaProfile = std::function<double(double)>;

struct MarginalFactors {
  double f_of_v = 0.0;
  double g_of_s = 0.0;
};

/*
 * System breach probability S(z, v) together with its inverse, the effort
 * function Z(s, v), and the factorisation Z_s(s, v) = -f(v) / g(s).
 *
 * GL Class I:  S = v / (alpha z + 1)^beta,  f = v^(1/beta),  g = alpha beta s^((beta+1)/beta)
 * GL Class II: S = v^(alpha z + 1),         f = -1/log v,    g = alpha s
 *
 * Custom models are defined by gamma(s) alone. g is rebuilt from
 * s g'(s) / g(s) = 1 + gamma(s) anchored at g(1) = alpha, f from
 * v f'(v) / f(v) = gamma(v) anchored at f(1) = 1, and
 * Z(s, v) = f(v) * integral_s^v dt / g(t).
 *
 * Instances are immutable; copies share the tabulated custom integrals.
 */
class BreachModel {
 public:
  static BreachModel gl_class1(double alpha, double beta);
  static BreachModel gl_class2(double alpha);
  static BreachModel custom(double alpha, GammaProfile gamma);
  /// gamma(s) = sum_k coeffs[k] s^k.
  static BreachModel custom_polynomial(double alpha, std::vector<double> coeffs);

  Family family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }
  /// Class I exponent; NaN for other families.
  double beta() const noexcept { return beta_; }
  /// Polynomial coefficients, lowest degree first; empty unless built from a polynomial.
  const std::vector<double>& gamma_coefficients() const noexcept { return gamma_coeffs_; }

  /// S(z, v). Requires 0 <= v <= 1 and z >= 0.
  double breach_probability(double z, double v) const;
  /// S_z(z, v), always negative on the model's valid domain.
  double breach_slope(double z, double v) const;
  /// Z(s, v). Requires 0 < s <= v <= 1.
  double effort(double s, double v) const;
  /// (f(v), g(s)) for s, v in the open unit interval.
  MarginalFactors marginal_factors(double s, double v) const;

  /// f(v) for v in (0, 1]; GL Class II returns +inf at v = 1.
  double f(double v) const;
  /// Inverse of f on (0, 1]. Returns NaN if target is outside the range of f.
  double f_inverse(double target) const;
  /// g(s) for s in (0, 1].
  double g(double s) const;
  double gamma(double s) const;

 private:
  struct CustomTable;

  BreachModel() = default;
  double custom_log_g(double s) const;
  double custom_log_f(double v) const;
  double custom_psi(double s) const;

  Family family_ = Family::GLClassI;
  double alpha_ = 1.0;
  double beta_ = 1.0;
  GammaProfile gamma_;
  std::vector<double> gamma_coeffs_;
  std::shared_ptr<const CustomTable> table_;
};

enum class GammaTag { Gamma1, Gamma2, GammaGeneral, Invalid };

std::string to_string(GammaTag tag);

struct GammaClass {
  GammaTag tag = GammaTag::Invalid;
  std::optional<double> crossover;
  std::string reason;  // set when tag is Invalid
};

/// Membership of gamma in Gamma_1, Gamma_2 or the single-crossover class Gamma.
GammaClass classify_gamma(const BreachModel& model, std::size_t grid_size = 256);

struct AssumptionCheck {
  std::string id;
  std::string description;
  bool passed = true;
  std::size_t points_checked = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // most offending value seen, sign-convention of the check
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;

  bool all_passed() const;
  const AssumptionCheck* find(const std::string& id) const;
};

/*
 * Numerically checks A1-A6, convexity of Z in s, effort complementarity
 * Z_sv < 0, the factored form of Z_s, positivity of f and g, and
 * log-convexity gamma >= 0. Sign violations are collected, never thrown.
 */
AssumptionReport validate_assumptions(const BreachModel& model, std::size_t grid_size = 256);

}  // namespace tsgl
