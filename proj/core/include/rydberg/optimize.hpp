#pragma once

#include <cstddef>
#include <functional>

namespace rydberg {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Maximizes a unimodal f on [a, b] by golden-section search until the
/// bracket is narrower than tol.
Extremum golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-9);

/// Evaluates f on n uniformly spaced points of [a, b] (n >= 2) and returns the
/// largest sample. Ties keep the first occurrence.
Extremum grid_maximize(const std::function<double(double)>& f, double a, double b,
                       std::size_t n);

/// Coarse grid followed by golden-section refinement on the two cells around
/// the best sample.
Extremum refine_maximum(const std::function<double(double)>& f, double a, double b,
                        std::size_t coarse_points, double tol = 1e-9);

}  // namespace rydberg
