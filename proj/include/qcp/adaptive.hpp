#pragma once

#include <cstdint>
#include <vector>

#include "qcp/tradeoff_curve.hpp"

namespace qcp {

// Per-step probabilities and value functions of the adaptive local strategy.
// p[n] is the chance of staying conclusive-0 at step n after a 0, q[n] the
// chance of recovering to 0 after an inconclusive; A/B are the expected
// remaining scores conditioned on those states (A[N] = 1, B[N] = 0).
struct AdaptiveSchedule {
  int N = 0;
  std::vector<double> p;  // index 1..N (slot 0 unused)
  std::vector<double> q;  // index 2..N (slots 0, 1 unused)
  std::vector<double> A;  // index 0..N
  std::vector<double> B;  // index 0..N
  double lower_bound = 0.0;  // A[0] / (N+1)
};

// Backward induction: p_n maximizes (A_n - B_n) p + f(p) (concave), q_n is
// p_bar when A_n >= B_n and 0 otherwise.
AdaptiveSchedule optimize_schedule(const TradeoffCurve& curve, int n_steps);

struct ForwardCheck {
  std::vector<double> S;        // index 0..N, S_0 = 1
  std::vector<double> T;        // index 0..N, T_0 = 0
  std::vector<double> success;  // success[k] = P(k|k)
  double average = 0.0;
  double backward_residual = 0.0;  // |average - A_0/(N+1)|
};

// Forward-propagates the outcome probabilities and reconciles the average
// against the backward value; a residual above 1e-8 is an internal error.
ForwardCheck forward_check(const AdaptiveSchedule& schedule, const TradeoffCurve& curve);

// Monte Carlo of the outcome chain for change point k. Deterministic for a
// fixed seed; trial i draws from the SplitMix64 stream (seed, i).
double simulate_schedule(const AdaptiveSchedule& schedule, const TradeoffCurve& curve, int k, long trials,
                         std::uint64_t seed);

}  // namespace qcp
