#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "tsgl/breach_model.hpp"
#include "tsgl/defender.hpp"
#include "tsgl/scenario.hpp"

namespace tsgl::testing {

inline Scenario make_scenario(BreachModel m, double G, double c, double L, double d) {
  return Scenario(std::move(m), AttackerParams(G, c), DefenderParams(L, d));
}

// GL I, alpha=1e-4, beta=1.1, R=5000 (G/c=20, L/d=1e5).
inline Scenario gl1_r5000() {
  return make_scenario(BreachModel::gl_class1(1e-4, 1.1), 70000, 3500, 100000, 1);
}

// GL II, L=G=1e5, alpha=1e-4, d=1, c=1e4.
inline Scenario gl2_flip() {
  return make_scenario(BreachModel::gl_class2(1e-4), 100000, 10000, 100000, 1);
}

// GL I, alpha=beta=1, L=G=10, c=d=1.
inline Scenario gl1_unit() {
  return make_scenario(BreachModel::gl_class1(1.0, 1.0), 10, 1, 10, 1);
}

inline BreachModel quadratic_gamma_model() { return BreachModel::custom_polynomial(1.0, {7.0 / 8.0, 0.75, -0.5}); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

 private:
  std::mt19937_64 eng_;
};

// Random GL scenario with R in [r_lo, r_hi], alpha in [1e-5, 1], beta in [0.8, 3].
inline Scenario random_gl_scenario(Rng& rng, double r_lo = 10.0, double r_hi = 1e5) {
  const double alpha = rng.log_uniform(1e-5, 1.0);
  BreachModel m = rng.coin() ? BreachModel::gl_class1(alpha, rng.uniform(0.8, 3.0))
                             : BreachModel::gl_class2(alpha);
  const double gc = rng.log_uniform(2.0, 1e3);
  const double R = rng.log_uniform(r_lo, r_hi);
  const double d = 1.0;
  return make_scenario(std::move(m), gc, 1.0, R * d * gc, d);
}

}  // namespace tsgl::testing
