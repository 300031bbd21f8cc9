#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcp/tradeoff_curve.hpp"

namespace qcp {

// (floor(N/2) + 1) / (N + 1): the effective prior weight of the even change
// points under the symmetric reduction.
double xi(int n_steps);

struct ChangePointBounds {
  int N = 0;
  double upper = 0.0;
  double upper_argmax = 0.0;  // r_N, the largest maximizer found
  std::optional<double> lower;
  std::optional<double> exact;
  std::string method;
};

// Best average success probability compatible with the pairwise tradeoff
// constraints: max over p of sum_i f^(i)(p) / (N+1). Involutive curves use
// the concave two-term reduction; everything else goes through a coarse grid
// plus golden-section refinement.
ChangePointBounds upper_bound(const TradeoffCurve& curve, int n_steps, int resolution = 10000);

// Closed form for unitary channel pairs with hull distance t.
double upper_bound_unitary(double t, int n_steps);

// Independent brute-force solver: value iteration of
// Q'_n(p) = p + Q_{n-1}(f(p)) with running prefix maxima on a dense grid.
double dp_oracle(const TradeoffCurve& curve, int n_steps, int grid_size);

struct MaximizerCheck {
  std::string name;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

struct MaximizerDiagnostics {
  std::vector<double> r;    // r_0 .. r_N (largest grid maximizers of R_n)
  std::vector<double> t_n;  // t_0 .. t_N (leftmost preimages of r_{n-1})
  std::vector<MaximizerCheck> checks;
  std::vector<std::string> flags;  // e.g. flat preimage segments
  double grid_tolerance = 0.0;
  bool all_pass = true;
};

// Grid audit of the maximizer inequalities the dynamic program relies on:
// r_n >= f^(n+1)(r_n), r_n >= f(p_bar), r_n >= r_1, f^(2)(r_n) <= r_{n-2},
// t_n <= r_n, each within 2/resolution.
MaximizerDiagnostics maximizer_diagnostics(const TradeoffCurve& curve, int n_steps, int resolution = 10000);

struct OscillationReport {
  std::vector<double> upper;  // upper[n-1] = upper bound at n
  bool odd_constant = true;
  bool even_nonincreasing = true;
  bool prior_sweep_nondecreasing = true;
  double max_odd_spread = 0.0;
  bool pass = true;
};

// For involutive curves: odd-N upper bounds are all equal, even-N bounds are
// nonincreasing, and the weighted two-channel value is nondecreasing in the
// prior over q in {0.5, 0.55, ..., 1.0}.
OscillationReport oscillation_check(const TradeoffCurve& curve, int n_max);

}  // namespace qcp
