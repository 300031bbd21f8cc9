#pragma once

#include <functional>

#include "qcp/errors.hpp"

namespace qcp {

using ScalarFn = std::function<double(double)>;

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section maximization of a concave function on [a, b].
// Stops when the bracket shrinks below tol or after 200 iterations.
ScalarMax maximize_concave_1d(const ScalarFn& g, double a, double b, double tol);

// Coarse grid scan (leftmost tie-break) followed by golden-section
// refinement inside the bracketing cell of the best grid point. The returned
// value is never below the best coarse-grid value.
ScalarMax maximize_grid_refined(const ScalarFn& g, double a, double b, int coarse_points, double tol);

// For a concave g whose maximum value is `value`: smallest / largest point of
// the plateau {x : g(x) >= value - 1e-12}, located by bisection to xtol.
double plateau_leftmost(const ScalarFn& g, double a, double x_star, double value, double xtol);
double plateau_rightmost(const ScalarFn& g, double x_star, double b, double value, double xtol);

}  // namespace qcp
