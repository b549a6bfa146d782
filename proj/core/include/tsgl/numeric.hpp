#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tsgl {

/// Thrown when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace numeric {

struct RootResult {
  double root = std::numeric_limits<double>::quiet_NaN();
  std::size_t iterations = 0;
  bool converged = false;
};

/*
 * Bisection on [lo, hi]. The caller guarantees f(lo) and f(hi) have opposite
 * signs (or one of them is zero). Terminates when the bracket is narrower than
 * tol or after max_iter halvings.
 */
template <class F>
RootResult bisect(F&& f, double lo, double hi, double tol = 1e-10,
                  std::size_t max_iter = 200) {
  RootResult out;
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0, true};
  if (fhi == 0.0) return {hi, 0, true};
  if ((flo < 0.0) == (fhi < 0.0)) return out;

  for (std::size_t i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    out.iterations = i + 1;
    if (fm == 0.0) {
      out.root = mid;
      out.converged = true;
      return out;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol) {
      out.converged = true;
      break;
    }
  }
  out.root = 0.5 * (lo + hi);
  return out;
}

struct ExtremumResult {
  double x = std::numeric_limits<double>::quiet_NaN();
  double value = std::numeric_limits<double>::quiet_NaN();
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
template <class F>
ExtremumResult golden_section_max(F&& f, double lo, double hi,
                                  double tol = 1e-10,
                                  std::size_t max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (std::size_t i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  ExtremumResult out;
  out.x = 0.5 * (a + b);
  out.value = f(out.x);
  // Endpoints can beat the interior bracket on flat or monotone tails.
  const double fl = f(lo);
  const double fh = f(hi);
  if (fl > out.value) out = {lo, fl};
  if (fh > out.value) out = {hi, fh};
  return out;
}

/*
 * Grid scan followed by golden-section refinement around the best grid point.
 * Robust to functions that are unimodal only near their maximum.
 */
template <class F>
ExtremumResult scan_and_refine_max(F&& f, const std::vector<double>& grid,
                                   double tol = 1e-10) {
  ExtremumResult best{std::numeric_limits<double>::quiet_NaN(),
                      -std::numeric_limits<double>::infinity()};
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best.value) {
      best = {grid[i], v};
      best_i = i;
    }
  }
  if (grid.size() < 3) return best;
  const double lo = grid[best_i == 0 ? 0 : best_i - 1];
  const double hi = grid[best_i + 1 >= grid.size() ? grid.size() - 1 : best_i + 1];
  const auto refined = golden_section_max(f, lo, hi, tol);
  return refined.value >= best.value ? refined : best;
}

/// Finite-difference step: max(1e-6, 1e-4 |x|).
inline double fd_step(double x) { return std::max(1e-6, 1e-4 * std::fabs(x)); }

/*
 * Central first derivative at x with the step rule above. When x sits within
 * one step of lo or hi the stencil centre is shifted inward by h so that no
 * evaluation leaves [lo, hi].
 */
template <class F>
double central_diff(F&& f, double x, double lo = -std::numeric_limits<double>::infinity(),
                    double hi = std::numeric_limits<double>::infinity()) {
  const double h = fd_step(x);
  double c = x;
  if (c - h < lo) c = lo + h;
  if (c + h > hi) c = hi - h;
  return (f(c + h) - f(c - h)) / (2.0 * h);
}

/// Richardson extrapolation of central_diff over steps h and h/2; error O(h^4).
template <class F>
double richardson_diff(F&& f, double x, double lo = -std::numeric_limits<double>::infinity(),
                       double hi = std::numeric_limits<double>::infinity()) {
  const double h = fd_step(x);
  double c = x;
  if (c - h < lo) c = lo + h;
  if (c + h > hi) c = hi - h;
  const double d1 = (f(c + h) - f(c - h)) / (2.0 * h);
  const double d2 = (f(c + 0.5 * h) - f(c - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

template <class F>
double central_diff2(F&& f, double x, double lo = -std::numeric_limits<double>::infinity(),
                     double hi = std::numeric_limits<double>::infinity()) {
  const double h = fd_step(x);
  double c = x;
  if (c - h < lo) c = lo + h;
  if (c + h > hi) c = hi - h;
  return (f(c + h) - 2.0 * f(c) + f(c - h)) / (h * h);
}

/// Composite Simpson on [a, b] with an even number of panels.
template <class F>
double simpson(F&& f, double a, double b, std::size_t panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) {
    sum += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

/// n points evenly spaced on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Interior grid on (lo, hi) with the endpoints pulled in by margin.
std::vector<double> interior_grid(double lo, double hi, std::size_t n, double margin = 1e-4);

}  // namespace numeric
}  // namespace tsgl
