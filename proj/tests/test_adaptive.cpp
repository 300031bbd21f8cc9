#include <array>
#include <cmath>

#include "doctest.h"
#include "qcp/adaptive.hpp"
#include "qcp/bounds.hpp"
#include "qcp/tradeoff_curve.hpp"

using namespace qcp;

namespace {

TradeoffCurve zero_curve() { return make_tabulated_curve({{0.0, 0.0}, {1.0, 0.0}}, 1.0); }

// Exhaustive grid search over the full schedule for N = 2: (p1, p2, q2).
double brute_force_n2(const TradeoffCurve& curve, int grid_points) {
  const double pb = curve.p_bar();
  double best = 0.0;
  for (int i = 0; i <= grid_points; ++i) {
    const double p1 = pb * i / grid_points;
    const double f1 = curve.eval(p1);
    for (int j = 0; j <= grid_points; ++j) {
      const double p2 = pb * j / grid_points;
      const double f2 = curve.eval(p2);
      for (int k = 0; k <= grid_points; ++k) {
        const double q2 = pb * k / grid_points;
        const double s1 = p1, t1 = 1.0 - p1;
        const double s2 = s1 * p2 + t1 * q2;
        const double value = (f1 + s1 * f2 + s2) / 3.0;
        best = std::max(best, value);
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("optimize_schedule: N = 1 matches the upper bound") {
  const TradeoffCurve curve = make_unitary_curve(0.5);
  const AdaptiveSchedule schedule = optimize_schedule(curve, 1);
  CHECK(schedule.lower_bound == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(schedule.p[1] - 0.5) <= 1e-6);
}

TEST_CASE("optimize_schedule: N = 2 closed values") {
  const TradeoffCurve curve = make_unitary_curve(0.5);
  const AdaptiveSchedule schedule = optimize_schedule(curve, 2);
  CHECK(schedule.p[1] == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(std::abs(schedule.p[2] - 0.5) <= 1e-6);
  CHECK(schedule.q[2] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(schedule.lower_bound == doctest::Approx(0.5).epsilon(1e-9));

  // Exhaustive 101^3 grid search over (p1, p2, q2) confirms the optimum.
  const double brute = brute_force_n2(curve, 100);
  CHECK(schedule.lower_bound >= brute - 1e-9);
  CHECK(schedule.lower_bound <= brute + 0.01);
}

TEST_CASE("optimize_schedule: f = 0 leaves only the final point identifiable") {
  for (int n : {1, 3, 5}) {
    const AdaptiveSchedule schedule = optimize_schedule(zero_curve(), n);
    CHECK(schedule.lower_bound == doctest::Approx(1.0 / (n + 1)).epsilon(1e-12));
  }
}

TEST_CASE("forward_check: unitary t = 0.5") {
  const TradeoffCurve curve = make_unitary_curve(0.5);

  const AdaptiveSchedule two = optimize_schedule(curve, 2);
  const ForwardCheck fc2 = forward_check(two, curve);
  CHECK(fc2.success[0] == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(fc2.success[1] == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(fc2.success[2] == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(fc2.average == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fc2.backward_residual <= 1e-10);

  const AdaptiveSchedule one = optimize_schedule(curve, 1);
  const ForwardCheck fc1 = forward_check(one, curve);
  CHECK(std::abs(fc1.success[0] - 0.5) <= 1e-6);
  CHECK(std::abs(fc1.success[1] - 0.5) <= 1e-6);
}

TEST_CASE("forward_check: f = 0") {
  const TradeoffCurve curve = zero_curve();
  const AdaptiveSchedule schedule = optimize_schedule(curve, 4);
  const ForwardCheck fc = forward_check(schedule, curve);
  for (int k = 0; k < 4; ++k) CHECK(fc.success[k] == doctest::Approx(0.0));
  CHECK(fc.success[4] == doctest::Approx(1.0));
}

TEST_CASE("simulate_schedule: structural zeros and exact hits") {
  const TradeoffCurve curve = make_unitary_curve(0.5);
  const AdaptiveSchedule schedule = optimize_schedule(curve, 2);
  // p1 = 0 sends every trial through the inconclusive state, killing k = 1.
  CHECK(simulate_schedule(schedule, curve, 1, 20000, 7) == doctest::Approx(0.0));

  const TradeoffCurve zero = zero_curve();
  const AdaptiveSchedule zs = optimize_schedule(zero, 3);
  CHECK(simulate_schedule(zs, zero, 3, 5000, 11) == doctest::Approx(1.0));
}

TEST_CASE("simulate_schedule: binomial agreement at k = 0") {
  const TradeoffCurve curve = make_unitary_curve(0.5);
  const AdaptiveSchedule schedule = optimize_schedule(curve, 2);
  const long trials = 100000;
  const double rate = simulate_schedule(schedule, curve, 0, trials, 7);
  const double sigma = std::sqrt(0.75 * 0.25 / trials);
  CHECK(std::abs(rate - 0.75) <= 4.0 * sigma);
  // Deterministic for a fixed seed.
  CHECK(simulate_schedule(schedule, curve, 0, trials, 7) == doctest::Approx(rate));
  CHECK_THROWS_AS(simulate_schedule(schedule, curve, 5, 100, 7), ValidationError);
}

TEST_CASE("lower bound never exceeds the upper bound") {
  std::vector<TradeoffCurve> curves;
  for (double t : {0.309, 0.5, 0.809, 0.9}) curves.push_back(make_unitary_curve(t));
  curves.push_back(make_tabulated_curve({{0.0, 0.6}, {0.3, 0.5}, {0.8, 0.0}}, 0.8));
  curves.push_back(zero_curve());
  for (const TradeoffCurve& curve : curves) {
    for (int n = 1; n <= 10; ++n) {
      const double lower = optimize_schedule(curve, n).lower_bound;
      const double upper = upper_bound(curve, n).upper;
      CHECK(lower <= upper + 1e-9);
      if (n == 1) CHECK(lower == doctest::Approx(upper).epsilon(1e-9));
    }
  }
}

TEST_CASE("exhaustive grid search equivalence for N <= 3") {
  const TradeoffCurve curve = make_unitary_curve(0.5);
  const double pb = curve.p_bar();
  const int grid_points = 50;
  const double slack = 2.0 * pb / grid_points;

  // N = 1: single parameter.
  {
    double brute = 0.0;
    for (int i = 0; i <= grid_points; ++i) {
      const double p1 = pb * i / grid_points;
      brute = std::max(brute, (curve.eval(p1) + p1) / 2.0);
    }
    const double value = optimize_schedule(curve, 1).lower_bound;
    CHECK(value >= brute - 1e-9);
    CHECK(value <= brute + slack);
  }
  // N = 2.
  {
    const double brute = brute_force_n2(curve, grid_points);
    const double value = optimize_schedule(curve, 2).lower_bound;
    CHECK(value >= brute - 1e-9);
    CHECK(value <= brute + slack);
  }
  // N = 3: five parameters (p1, p2, p3, q2, q3).
  {
    double brute = 0.0;
    for (int i1 = 0; i1 <= grid_points; ++i1) {
      const double p1 = pb * i1 / grid_points;
      const double f1 = curve.eval(p1);
      const double s1 = p1, t1 = 1.0 - p1;
      for (int i2 = 0; i2 <= grid_points; ++i2) {
        const double p2 = pb * i2 / grid_points;
        const double f2 = curve.eval(p2);
        for (int k2 = 0; k2 <= grid_points; ++k2) {
          const double q2 = pb * k2 / grid_points;
          const double s2 = s1 * p2 + t1 * q2;
          const double t2 = s1 * (1.0 - p2) + t1 * (1.0 - q2);
          const double head = f1 + s1 * f2;
          for (int i3 = 0; i3 <= grid_points; ++i3) {
            const double p3 = pb * i3 / grid_points;
            const double f3 = curve.eval(p3);
            for (int k3 = 0; k3 <= grid_points; ++k3) {
              const double q3 = pb * k3 / grid_points;
              const double s3 = s2 * p3 + t2 * q3;
              const double value = (head + s2 * f3 + s3) / 4.0;
              if (value > brute) brute = value;
            }
          }
        }
      }
    }
    const double value = optimize_schedule(curve, 3).lower_bound;
    CHECK(value >= brute - 1e-9);
    CHECK(value <= brute + slack);
  }
}

TEST_CASE("schedule invariants: probabilities in range, value identity") {
  for (double t : {0.309, 0.809}) {
    const TradeoffCurve curve = make_unitary_curve(t);
    for (int n : {2, 5, 9}) {
      const AdaptiveSchedule schedule = optimize_schedule(curve, n);
      for (int i = 1; i <= n; ++i) {
        CHECK(schedule.p[i] >= -1e-12);
        CHECK(schedule.p[i] <= curve.p_bar() + 1e-12);
        if (i >= 2) {
          CHECK(schedule.q[i] >= -1e-12);
          CHECK(schedule.q[i] <= curve.p_bar() + 1e-12);
        }
      }
      CHECK(schedule.lower_bound == doctest::Approx(schedule.A[0] / (n + 1)).epsilon(1e-12));
      const ForwardCheck fc = forward_check(schedule, curve);
      for (int i = 0; i <= n; ++i) CHECK(fc.S[i] + fc.T[i] <= 1.0 + 1e-9);
    }
  }
}
