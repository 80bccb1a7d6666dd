#include "rydberg/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "rydberg/error.hpp"

namespace rydberg {

Extremum golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                 double tol) {
  if (!(b > a)) throw ModelError(ErrorCode::invalid_argument, "golden section: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

Extremum grid_maximize(const std::function<double(double)>& f, double a, double b,
                       std::size_t n) {
  if (n < 2 || !(b > a)) throw ModelError(ErrorCode::invalid_argument, "grid search: bad range");
  Extremum best{a, f(a)};
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = a + step * static_cast<double>(i);
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

Extremum refine_maximum(const std::function<double(double)>& f, double a, double b,
                        std::size_t coarse_points, double tol) {
  const Extremum coarse = grid_maximize(f, a, b, coarse_points);
  const double step = (b - a) / static_cast<double>(coarse_points - 1);
  const double lo = std::max(a, coarse.x - step);
  const double hi = std::min(b, coarse.x + step);
  Extremum fine = golden_section_maximize(f, lo, hi, tol);
  return fine.value >= coarse.value ? fine : coarse;
}

}  // namespace rydberg
