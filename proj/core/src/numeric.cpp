#include "tsgl/numeric.hpp"

namespace tsgl::numeric {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + step * static_cast<double>(i));
  out.back() = hi;
  return out;
}

std::vector<double> interior_grid(double lo, double hi, std::size_t n, double margin) {
  return linspace(lo + margin, hi - margin, n);
}

}  // namespace tsgl::numeric
