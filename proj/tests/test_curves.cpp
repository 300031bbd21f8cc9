#include <cmath>
#include <complex>

#include "doctest.h"
#include "qcp/scalar_opt.hpp"
#include "qcp/tradeoff_curve.hpp"
#include "qcp/unitary_pair.hpp"

using namespace qcp;

TEST_CASE("make_unitary_curve: endpoints and the pinned optimum") {
  const TradeoffCurve steep = make_unitary_curve(0.9);
  CHECK(steep.p_bar() == doctest::Approx(0.19));
  CHECK(steep.eval(steep.p_bar()) == doctest::Approx(0.0).epsilon(1e-12));

  // f(1 - tc) = 1 - t/c at t = 0.5, c = 0.8.
  const TradeoffCurve half = make_unitary_curve(0.5);
  CHECK(half.eval(0.6) == doctest::Approx(0.375).epsilon(1e-12));

  CHECK(half.eval(half.eval(0.2)) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(half.involution());

  CHECK_THROWS_AS(make_unitary_curve(0.0), ValidationError);
  CHECK_THROWS_AS(make_unitary_curve(1.0), ValidationError);
}

TEST_CASE("make_pure_state_curve: overlap form") {
  const TradeoffCurve curve = make_pure_state_curve(0.5);
  CHECK(curve.p_bar() == doctest::Approx(0.75));
  CHECK(curve.eval(0.0) == doctest::Approx(curve.p_bar()));
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = curve.p_bar() * i / 100.0;
    worst = std::max(worst, std::abs(curve.eval(curve.eval(p)) - p));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("make_tabulated_curve: validation and interpolation accuracy") {
  const TradeoffCurve linear = make_tabulated_curve({{0.0, 1.0}, {1.0, 0.0}}, 1.0);
  CHECK(linear.eval(0.25) == doctest::Approx(0.75));
  CHECK(linear.involution());

  CHECK_THROWS_WITH_AS((void)make_tabulated_curve({{0.0, 0.5}, {0.5, 0.6}, {1.0, 0.0}}, 1.0),
                       doctest::Contains("knot 1"), ValidationError);

  // Dense sampling of the closed-form curve: interpolation error stays under
  // max|f''| h^2 / 8 (about 2.3e-6 for 1001 uniform knots at t = 0.5).
  const TradeoffCurve reference = make_unitary_curve(0.5);
  std::vector<std::pair<double, double>> knots;
  const int count = 1001;
  for (int i = 0; i < count; ++i) {
    const double p = reference.p_bar() * i / (count - 1);
    knots.emplace_back(p, reference.eval(p));
  }
  const TradeoffCurve sampled = make_tabulated_curve(knots, reference.p_bar());
  const double h = reference.p_bar() / (count - 1);
  const double t = 0.5;
  const double max_curvature = 2.0 * t * t / std::pow(1.0 - reference.p_bar(), 3);
  const double bound = 1.05 * max_curvature * h * h / 8.0;
  double worst = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const double p = reference.p_bar() * i / 5000.0;
    worst = std::max(worst, std::abs(sampled.eval(p) - reference.eval(p)));
  }
  CHECK(worst <= bound);
}

TEST_CASE("make_tabulated_curve: rejects f(0) > p_bar with inversion guidance") {
  // f(0) = 0.9 with p_bar = 0.5 means the channel roles are swapped.
  CHECK_THROWS_WITH_AS((void)make_tabulated_curve({{0.0, 0.9}, {0.5, 0.0}}, 0.5), doctest::Contains("invert"),
                       ValidationError);
  const TradeoffCurve fixed = make_tabulated_curve({{0.0, 0.9}, {0.5, 0.0}}, 0.5, /*invert=*/true);
  CHECK(fixed.p_bar() == doctest::Approx(0.9));
  CHECK(fixed.eval(0.0) == doctest::Approx(0.5));
  CHECK(fixed.eval(0.9) == doctest::Approx(0.0));
}

TEST_CASE("eval and eval_iterated") {
  const TradeoffCurve curve = make_unitary_curve(0.5);
  CHECK(curve.eval_iterated(0.3, 0) == doctest::Approx(0.3));
  CHECK(curve.eval_iterated(0.3, 2) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(curve.eval_iterated(0.0, 1) == doctest::Approx(0.75));
  CHECK_THROWS_AS((void)curve.eval(0.9), ValidationError);
  CHECK_THROWS_AS((void)curve.eval(-0.1), ValidationError);
}

TEST_CASE("validate_curve reports") {
  CHECK(make_unitary_curve(0.309).validate().passed());
  CHECK(make_unitary_curve(0.309).validate().involutive);

  // Convex knots are rejected at construction with the offending knot named.
  CHECK_THROWS_WITH_AS((void)make_tabulated_curve({{0.0, 1.0}, {0.5, 0.2}, {1.0, 0.0}}, 1.0),
                       doctest::Contains("concave"), ValidationError);

  const TradeoffCurve zero = make_tabulated_curve({{0.0, 0.0}, {1.0, 0.0}}, 1.0);
  const CurveReport report = zero.validate();
  CHECK(report.passed());
  CHECK_FALSE(report.involutive);
}

TEST_CASE("curve monotonicity property") {
  for (const TradeoffCurve& curve :
       {make_unitary_curve(0.309), make_unitary_curve(0.809), make_pure_state_curve(0.6)}) {
    double prev = curve.eval(0.0);
    for (int i = 1; i <= 200; ++i) {
      const double p = curve.p_bar() * i / 200.0;
      const double f = curve.eval(p);
      CHECK(f <= prev + 1e-12);
      prev = f;
    }
  }
}

TEST_CASE("unitary curve: argmax of p + f(p) sits at 1 - t") {
  for (double t : {0.309, 0.5, 0.809}) {
    const TradeoffCurve curve = make_unitary_curve(t);
    const ScalarMax best =
        maximize_concave_1d([&](double p) { return p + curve.eval(p); }, 0.0, curve.p_bar(), 1e-12);
    CHECK(best.x == doctest::Approx(1.0 - t).epsilon(1e-7));
    CHECK(best.value == doctest::Approx(2.0 * (1.0 - t)).epsilon(1e-10));
  }
}

TEST_CASE("analyze_unitary_pair: qubit eigenphase example") {
  ComplexMatrix u0 = ComplexMatrix::identity(2);
  ComplexMatrix u1 = ComplexMatrix::identity(2);
  u1(1, 1) = std::polar(1.0, 0.4 * M_PI);
  const UnitaryPairAnalysis analysis = analyze_unitary_pair(u0, u1);
  CHECK(analysis.t == doctest::Approx(0.80902).epsilon(1e-4));
  CHECK(analysis.t == doctest::Approx(std::cos(0.2 * M_PI)).epsilon(1e-12));
  CHECK(analysis.u_defined);
  // |<+| U0^dagger U1 |+>| = t and u^2 = omega.
  const ComplexMatrix u_rel = u0.adjoint() * u1;
  const cxd overlap = dot(analysis.ket_plus, matvec(u_rel, analysis.ket_plus));
  CHECK(std::abs(std::abs(overlap) - analysis.t) <= 1e-10);
  CHECK(std::abs(analysis.u * analysis.u - analysis.omega) <= 1e-9);
  CHECK(std::abs(analysis.lambda0 + analysis.lambda1) / 2.0 == doctest::Approx(analysis.t).epsilon(1e-10));
}

TEST_CASE("analyze_unitary_pair: identical pair and perfect discrimination") {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const UnitaryPairAnalysis same = analyze_unitary_pair(id, id);
  CHECK(same.t == doctest::Approx(1.0));

  ComplexMatrix z = ComplexMatrix::identity(2);
  z(1, 1) = -1.0;
  const UnitaryPairAnalysis flip = analyze_unitary_pair(id, z);
  CHECK(flip.t == doctest::Approx(0.0));
  CHECK_FALSE(flip.u_defined);
  // The probe achieves exactly zero overlap.
  const cxd overlap = dot(flip.ket_plus, matvec(z, flip.ket_plus));
  CHECK(std::abs(overlap) <= 1e-10);
  CHECK(vec_norm(flip.ket_plus) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("analyze_unitary_pair: zero-overlap probe with three eigenvalues") {
  // Eigenphases 0, 2pi/3, 4pi/3 surround the origin with no antipodal pair,
  // so the probe must mix three eigenvectors.
  ComplexMatrix u0 = ComplexMatrix::identity(3);
  ComplexMatrix u1(3, 3);
  for (int i = 0; i < 3; ++i) u1(i, i) = std::polar(1.0, 2.0 * M_PI * i / 3.0);
  const UnitaryPairAnalysis analysis = analyze_unitary_pair(u0, u1);
  CHECK(analysis.t == doctest::Approx(0.0));
  const cxd overlap = dot(analysis.ket_plus, matvec(u1, analysis.ket_plus));
  CHECK(std::abs(overlap) <= 1e-10);
  CHECK(vec_norm(analysis.ket_plus) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("analyze_unitary_pair: global phase leaves t unchanged") {
  ComplexMatrix u0 = ComplexMatrix::identity(2);
  ComplexMatrix u1(2, 2);
  u1(0, 0) = std::polar(1.0, 0.15);
  u1(1, 1) = std::polar(1.0, 0.15 + 0.4 * M_PI);
  const double base = analyze_unitary_pair(u0, u1).t;
  for (double phase : {0.9, 2.2}) {
    const ComplexMatrix rotated = u1 * std::polar(1.0, phase);
    CHECK(analyze_unitary_pair(u0, rotated).t == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("analyze_unitary_pair: validation") {
  ComplexMatrix bad(2, 2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(analyze_unitary_pair(bad, ComplexMatrix::identity(2)), ValidationError);
  CHECK_THROWS_AS(analyze_unitary_pair(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), ValidationError);
}
