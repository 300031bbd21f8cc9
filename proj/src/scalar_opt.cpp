#include "qcp/scalar_opt.hpp"

#include <cmath>

namespace qcp {

namespace {
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
constexpr int kMaxGoldenIters = 200;
}  // namespace

ScalarMax maximize_concave_1d(const ScalarFn& g, double a, double b, double tol) {
  if (a > b) throw ValidationError("maximize_concave_1d: a > b");
  if (tol <= 0.0) tol = 1e-12;
  if (b - a <= tol) {
    const double x = 0.5 * (a + b);
    return {x, g(x)};
  }
  double lo = a, hi = b;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int iter = 0; iter < kMaxGoldenIters && (hi - lo) > tol; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = g(x1);
    }
  }
  // The bracket may have converged onto either endpoint of [a, b]; report the
  // best of the interior estimate and the untouched endpoints.
  double x = 0.5 * (lo + hi);
  double v = g(x);
  const double va = g(a);
  const double vb = g(b);
  if (va > v) {
    x = a;
    v = va;
  }
  if (vb > v) {
    x = b;
    v = vb;
  }
  return {x, v};
}

ScalarMax maximize_grid_refined(const ScalarFn& g, double a, double b, int coarse_points, double tol) {
  if (a > b) throw ValidationError("maximize_grid_refined: a > b");
  if (coarse_points < 2) throw ValidationError("maximize_grid_refined: need at least 2 coarse points");
  if (tol <= 0.0) tol = 1e-12;
  if (a == b) return {a, g(a)};

  const double h = (b - a) / (coarse_points - 1);
  int best_i = 0;
  double best_v = g(a);
  for (int i = 1; i < coarse_points; ++i) {
    const double x = (i == coarse_points - 1) ? b : a + i * h;
    const double v = g(x);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double lo = std::max(a, a + (best_i - 1) * h);
  const double hi = std::min(b, a + (best_i + 1) * h);
  const ScalarMax refined = maximize_concave_1d(g, lo, hi, tol);
  if (refined.value > best_v) return refined;
  const double best_x = (best_i == coarse_points - 1) ? b : a + best_i * h;
  return {best_x, best_v};
}

namespace {
// Near-machine slack: an exactly flat plateau (constant or affine-topped
// objective) passes, while a smooth quadratic maximum erodes by well under
// 1e-6 in x.
double plateau_threshold(double value) { return value - 1e-13 * std::max(1.0, std::abs(value)); }
}  // namespace

double plateau_leftmost(const ScalarFn& g, double a, double x_star, double value, double xtol) {
  if (xtol <= 0.0) xtol = 1e-12;
  const double thresh = plateau_threshold(value);
  if (g(a) >= thresh) return a;
  double lo = a, hi = x_star;
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= thresh)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double plateau_rightmost(const ScalarFn& g, double x_star, double b, double value, double xtol) {
  if (xtol <= 0.0) xtol = 1e-12;
  const double thresh = plateau_threshold(value);
  if (g(b) >= thresh) return b;
  double lo = x_star, hi = b;
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= thresh)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace qcp
