#include "qcp/adaptive.hpp"

#include <cmath>

#include "qcp/rng.hpp"
#include "qcp/scalar_opt.hpp"

namespace qcp {

AdaptiveSchedule optimize_schedule(const TradeoffCurve& curve, int n_steps) {
  if (n_steps < 1) throw ValidationError("optimize_schedule: N must be >= 1");
  const double pb = curve.p_bar();

  AdaptiveSchedule sched;
  sched.N = n_steps;
  sched.p.assign(n_steps + 1, 0.0);
  sched.q.assign(n_steps + 1, 0.0);
  sched.A.assign(n_steps + 1, 0.0);
  sched.B.assign(n_steps + 1, 0.0);
  sched.A[n_steps] = 1.0;
  sched.B[n_steps] = 0.0;

  for (int n = n_steps; n >= 1; --n) {
    const double diff = sched.A[n] - sched.B[n];
    const ScalarFn objective = [&](double p) { return diff * p + curve.eval(p); };
    const ScalarMax best = maximize_concave_1d(objective, 0.0, pb, 1e-10);
    sched.p[n] = plateau_leftmost(objective, 0.0, best.x, best.value, 1e-12);
    if (n >= 2) sched.q[n] = diff >= 0.0 ? pb : 0.0;
    sched.A[n - 1] = curve.eval(sched.p[n]) + sched.p[n] * sched.A[n] + (1.0 - sched.p[n]) * sched.B[n];
    if (n >= 2) sched.B[n - 1] = sched.q[n] * sched.A[n] + (1.0 - sched.q[n]) * sched.B[n];
  }
  sched.lower_bound = sched.A[0] / (n_steps + 1);
  return sched;
}

ForwardCheck forward_check(const AdaptiveSchedule& schedule, const TradeoffCurve& curve) {
  const int n_steps = schedule.N;
  ForwardCheck fc;
  fc.S.assign(n_steps + 1, 0.0);
  fc.T.assign(n_steps + 1, 0.0);
  fc.S[0] = 1.0;
  for (int n = 1; n <= n_steps; ++n) {
    const double q = n >= 2 ? schedule.q[n] : 0.0;
    fc.S[n] = fc.S[n - 1] * schedule.p[n] + fc.T[n - 1] * q;
    fc.T[n] = fc.S[n - 1] * (1.0 - schedule.p[n]) + fc.T[n - 1] * (1.0 - q);
  }
  fc.success.assign(n_steps + 1, 0.0);
  for (int k = 0; k < n_steps; ++k) fc.success[k] = fc.S[k] * curve.eval(schedule.p[k + 1]);
  fc.success[n_steps] = fc.S[n_steps];
  double total = 0.0;
  for (double s : fc.success) total += s;
  fc.average = total / (n_steps + 1);
  fc.backward_residual = std::abs(fc.average - schedule.lower_bound);
  if (fc.backward_residual > 1e-8)
    throw VerificationError("forward_check: forward average deviates from the backward value by " +
                            std::to_string(fc.backward_residual));
  return fc;
}

double simulate_schedule(const AdaptiveSchedule& schedule, const TradeoffCurve& curve, int k, long trials,
                         std::uint64_t seed) {
  const int n_steps = schedule.N;
  if (k < 0 || k > n_steps) throw ValidationError("simulate_schedule: change point k out of range");
  if (trials < 1) throw ValidationError("simulate_schedule: trials must be >= 1");

  const double declare_prob = k < n_steps ? curve.eval(schedule.p[k + 1]) : 0.0;
  long successes = 0;
  for (long trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = SplitMix64::for_stream(seed, static_cast<std::uint64_t>(trial));
    bool conclusive = true;  // state 0 at s_0
    for (int n = 1; n <= k; ++n) {
      const double stay = conclusive ? schedule.p[n] : schedule.q[n];
      conclusive = rng.next_double() < stay;
    }
    if (k == n_steps) {
      if (conclusive) ++successes;
    } else if (conclusive && rng.next_double() < declare_prob) {
      ++successes;
    }
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace qcp
