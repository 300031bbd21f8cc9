#include "qcp/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "qcp/scalar_opt.hpp"

namespace qcp {

double xi(int n_steps) {
  if (n_steps < 1) throw ValidationError("xi: N must be >= 1");
  return static_cast<double>(n_steps / 2 + 1) / (n_steps + 1);
}

namespace {

// R_N(p) = sum_{i=0}^{N} f^(i)(p).
double iterated_sum(const TradeoffCurve& curve, int n_steps, double p) {
  double x = p;
  double total = x;
  for (int i = 1; i <= n_steps; ++i) {
    x = curve.eval(x);
    total += x;
  }
  return total;
}

}  // namespace

ChangePointBounds upper_bound(const TradeoffCurve& curve, int n_steps, int resolution) {
  if (n_steps < 1) throw ValidationError("upper_bound: N must be >= 1");
  if (resolution < 101) throw ValidationError("upper_bound: resolution must be >= 101");
  const double pb = curve.p_bar();

  ChangePointBounds out;
  out.N = n_steps;

  if (curve.involution()) {
    // Involutive f collapses the iterate sum to two terms with weight xi_N.
    const double w = xi(n_steps);
    const ScalarFn h = [&](double p) { return w * p + (1.0 - w) * curve.eval(p); };
    const ScalarMax best = maximize_concave_1d(h, 0.0, pb, 1e-12);
    const double r = plateau_rightmost(h, best.x, pb, best.value, 1e-12);
    out.upper = std::max(best.value, h(r));
    out.upper_argmax = r;
    out.method = "involution-concave";
    return out;
  }

  // General curves: R_N is not certified concave, so scan a coarse grid and
  // refine around the largest maximizer.
  const ScalarFn rn = [&](double p) { return iterated_sum(curve, n_steps, p); };
  const double h = pb / (resolution - 1);
  double grid_best = -1.0;
  int best_i = 0;  // rightmost grid argmax
  for (int i = 0; i < resolution; ++i) {
    const double x = (i == resolution - 1) ? pb : i * h;
    const double v = rn(x);
    if (v >= grid_best - 1e-13) {
      if (v > grid_best) grid_best = v;
      best_i = i;
    }
  }
  const double lo = std::max(0.0, (best_i - 1) * h);
  const double hi = std::min(pb, (best_i + 1) * h);
  const ScalarMax refined = maximize_concave_1d(rn, lo, hi, 1e-10);
  double r = (best_i == resolution - 1) ? pb : best_i * h;
  if (refined.value > grid_best) r = refined.x;
  out.upper = rn(r) / (n_steps + 1);
  out.upper_argmax = r;
  out.method = "grid-refined";
  return out;
}

double upper_bound_unitary(double t, int n_steps) {
  if (n_steps < 1) throw ValidationError("upper_bound_unitary: N must be >= 1");
  if (t < -1e-12 || t > 1.0 + 1e-12) throw ValidationError("upper_bound_unitary: t must lie in [0, 1]");
  t = std::clamp(t, 0.0, 1.0);
  if (t == 0.0) return 1.0;
  if (t == 1.0) return 0.0;
  const double c =
      (n_steps % 2 == 1) ? 1.0 : std::max(t, std::sqrt(static_cast<double>(n_steps) / (n_steps + 2)));
  return 1.0 - t * ((n_steps + 2) * c + n_steps / c) / (2.0 * (n_steps + 1));
}

double dp_oracle(const TradeoffCurve& curve, int n_steps, int grid_size) {
  if (n_steps < 1) throw ValidationError("dp_oracle: N must be >= 1");
  if (grid_size < 1001) throw ValidationError("dp_oracle: grid_size must be >= 1001");
  const double pb = curve.p_bar();
  const double h = pb / (grid_size - 1);

  // Interpolation targets f(p_j) are step-independent; cache index/weight.
  std::vector<double> xs(grid_size);
  std::vector<int> f_idx(grid_size);
  std::vector<double> f_frac(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    xs[j] = (j == grid_size - 1) ? pb : j * h;
    const double fp = curve.eval(xs[j]);
    double pos = h > 0.0 ? fp / h : 0.0;
    int idx = static_cast<int>(pos);
    idx = std::clamp(idx, 0, grid_size - 2);
    f_idx[j] = idx;
    f_frac[j] = std::clamp(pos - idx, 0.0, 1.0);
  }

  std::vector<double> q = xs;  // Q_0(p) = p (already nondecreasing)
  std::vector<double> next(grid_size);
  for (int n = 1; n <= n_steps; ++n) {
    for (int j = 0; j < grid_size; ++j) {
      const double interp = q[f_idx[j]] + f_frac[j] * (q[f_idx[j] + 1] - q[f_idx[j]]);
      next[j] = xs[j] + interp;
    }
    // Prefix maximum turns Q'_n into Q_n.
    for (int j = 1; j < grid_size; ++j) next[j] = std::max(next[j], next[j - 1]);
    q.swap(next);
  }
  return q[grid_size - 1] / (n_steps + 1);
}

MaximizerDiagnostics maximizer_diagnostics(const TradeoffCurve& curve, int n_steps, int resolution) {
  if (n_steps < 1) throw ValidationError("maximizer_diagnostics: N must be >= 1");
  if (resolution < 101) throw ValidationError("maximizer_diagnostics: resolution must be >= 101");
  const double pb = curve.p_bar();
  const double h = pb / (resolution - 1);

  MaximizerDiagnostics diag;
  diag.grid_tolerance = 2.0 / resolution;

  // One pass of the orbit gives R_n on the grid for every n <= N.
  std::vector<double> xs(resolution), orbit(resolution), running(resolution);
  for (int j = 0; j < resolution; ++j) {
    xs[j] = (j == resolution - 1) ? pb : j * h;
    orbit[j] = xs[j];
    running[j] = xs[j];
  }
  diag.r.resize(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) {
    if (n > 0) {
      for (int j = 0; j < resolution; ++j) {
        orbit[j] = curve.eval(orbit[j]);
        running[j] += orbit[j];
      }
    }
    double best = -1.0;
    int best_j = 0;
    for (int j = 0; j < resolution; ++j) {
      if (running[j] >= best - 1e-13) {
        if (running[j] > best) best = running[j];
        best_j = j;
      }
    }
    diag.r[n] = xs[best_j];
  }

  // t_n: leftmost preimage of r_{n-1} under f, or 0 when no preimage exists.
  const double f0 = curve.eval(0.0);
  const double fpb = curve.eval(pb);
  diag.t_n.assign(n_steps + 1, 0.0);
  for (int n = 1; n <= n_steps; ++n) {
    const double y = diag.r[n - 1];
    if (y < fpb - 1e-12 || y > f0 + 1e-12) continue;  // empty preimage set
    double lo = 0.0, hi = pb;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (curve.eval(mid) <= y)
        hi = mid;
      else
        lo = mid;
    }
    diag.t_n[n] = hi;
    // Flag flat preimage segments: the inverse is set-valued there and only
    // the leftmost-point convention is implemented.
    double rlo = 0.0, rhi = pb;
    while (rhi - rlo > 1e-12) {
      const double mid = 0.5 * (rlo + rhi);
      if (curve.eval(mid) >= y)
        rlo = mid;
      else
        rhi = mid;
    }
    if (rlo - hi > diag.grid_tolerance)
      diag.flags.push_back("flat preimage of r_" + std::to_string(n - 1) + " (width " +
                           std::to_string(rlo - hi) + "); using leftmost point");
  }

  const double tol = diag.grid_tolerance;
  auto add = [&](const std::string& name, int n, double lhs, double rhs, bool pass) {
    diag.checks.push_back({name, n, lhs, rhs, pass});
    if (!pass) diag.all_pass = false;
  };
  for (int n = 0; n <= n_steps; ++n) {
    const double r = diag.r[n];
    const double f_next = curve.eval_iterated(r, n + 1);
    add("r_n >= f^(n+1)(r_n)", n, r, f_next, r >= f_next - tol);
    add("r_n >= f(p_bar)", n, r, fpb, r >= fpb - tol);
    add("r_n >= r_1", n, r, diag.r[1], r >= diag.r[1] - tol);
    if (n >= 2) {
      const double f2 = curve.eval_iterated(r, 2);
      add("f^(2)(r_n) <= r_{n-2}", n, f2, diag.r[n - 2], f2 <= diag.r[n - 2] + tol);
    }
    add("t_n <= r_n", n, diag.t_n[n], r, diag.t_n[n] <= r + tol);
  }
  return diag;
}

OscillationReport oscillation_check(const TradeoffCurve& curve, int n_max) {
  if (!curve.involution()) throw ValidationError("oscillation_check: curve is not an involution");
  if (n_max < 1) throw ValidationError("oscillation_check: N_max must be >= 1");

  OscillationReport report;
  report.upper.resize(n_max);
  for (int n = 1; n <= n_max; ++n) report.upper[n - 1] = upper_bound(curve, n).upper;

  double odd_min = 1.0, odd_max = 0.0;
  for (int n = 1; n <= n_max; n += 2) {
    odd_min = std::min(odd_min, report.upper[n - 1]);
    odd_max = std::max(odd_max, report.upper[n - 1]);
  }
  report.max_odd_spread = std::max(0.0, odd_max - odd_min);
  report.odd_constant = report.max_odd_spread <= 1e-9;

  for (int n = 4; n <= n_max; n += 2)
    if (report.upper[n - 1] > report.upper[n - 3] + 1e-9) report.even_nonincreasing = false;

  double prev = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double q = 0.5 + 0.05 * i;
    const ScalarFn h = [&](double p) { return q * p + (1.0 - q) * curve.eval(p); };
    const double value = maximize_concave_1d(h, 0.0, curve.p_bar(), 1e-12).value;
    if (value < prev - 1e-9) report.prior_sweep_nondecreasing = false;
    prev = value;
  }
  report.pass = report.odd_constant && report.even_nonincreasing && report.prior_sweep_nondecreasing;
  return report;
}

}  // namespace qcp
