#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsgl/defender.hpp"

namespace tsgl {

/// Raised when a family-specific operation receives a model of another family.
class WrongFamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FixedPointRoot {
  double x = 0.0;
  bool tangent = false;  // double root, or two roots merged within 1e-6
};

struct PartitionInterval {
  double lo = 0.0;
  double hi = 0.0;
  int sign = 0;  // sign of s1(v) - v at the midpoint; 0 where s1 does not exist
  DecisionInterval interval = DecisionInterval::DI1;
};

struct FixedPointReport {
  double R = 0.0;
  double s_hat = 0.0;
  double v_hat = 0.0;
  bool v_hat_clamped = false;
  std::vector<FixedPointRoot> roots;  // ascending
  std::optional<double> v_L;
  std::optional<double> v_H;
  std::vector<PartitionInterval> partition;  // tiles (0, 1) in order
};

/*
 * Roots of D(x) f(x) = R on (s_hat, 1): the initial vulnerabilities where
 * s1(v) = v and the decision interval switches between DI2 and DI3.
 * Class I reduces to xi(x) = R alpha beta, Class II to xi(x) = -alpha R log x.
 */
FixedPointReport solve_fpe(const Scenario& scn);

enum class Class1Count { NoneAbove, Two, One };
enum class Class2Count { None, One };

std::string to_string(Class1Count c);
std::string to_string(Class2Count c);

/// Fixed-point count for GL Class I from R alpha beta against xi(s_hat) and xi_hat.
Class1Count fixed_point_count_class1(const Scenario& scn);

/// xi_hat / (-log s_xi), the alpha R threshold for GL Class II.
double class2_threshold();

/// Fixed-point count for GL Class II; alpha R at the threshold counts as None.
Class2Count fixed_point_count_class2(const Scenario& scn);

struct CriticalRatio {
  double value = 0.0;   // +inf when unbounded
  double argmax = 0.0;
  bool unbounded = false;  // D f grows without bound at an endpoint (GL Class II)
};

/// R_c = sup over x in (0, 1) of D(x) f(x); no fixed point exists for R > R_c.
CriticalRatio critical_ratio(const Scenario& scn);

enum class PropertyStatus { Pass, Fail, Skipped };

std::string to_string(PropertyStatus s);

struct PropertyCheck {
  std::string name;
  PropertyStatus status = PropertyStatus::Pass;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  bool all_passed() const;  // Skipped does not count as failure
  const PropertyCheck* find(const std::string& name) const;
};

/// Numerical verification of the closed-form relations behind the Class I fixed-point count.
PropertyReport class1_fixed_point_properties(const Scenario& scn);

}  // namespace tsgl
