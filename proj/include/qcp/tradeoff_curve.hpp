#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcp/errors.hpp"

namespace qcp {

enum class CurveKind { Unitary, PureState, Tabulated };

struct CurveReport {
  bool nonincreasing = true;
  bool concave = true;
  bool in_range = true;
  bool involutive = false;
  double max_involution_residual = 0.0;
  std::vector<std::string> notes;
  bool passed() const { return nonincreasing && concave && in_range; }
};

// The map f: [0, p_bar] -> [0, p_bar] giving the best probability of
// identifying the second channel when the first is identified with
// probability p. Immutable after construction; all evaluations are pure.
class TradeoffCurve {
 public:
  CurveKind kind() const { return kind_; }
  double p_bar() const { return p_bar_; }
  bool involution() const { return involution_; }
  // t (unitary) or s (pure state); 0 for tabulated curves.
  double parameter() const { return parameter_; }

  double eval(double p) const;
  double eval_iterated(double p, int i) const;

  // Grid audit (1001 points) of monotonicity, concavity, range, and the
  // involution residual. Report-only, never throws.
  CurveReport validate() const;

  const std::vector<double>& knot_p() const { return knot_p_; }
  const std::vector<double>& knot_f() const { return knot_f_; }

  friend TradeoffCurve make_unitary_curve(double t);
  friend TradeoffCurve make_pure_state_curve(double s);
  friend TradeoffCurve make_tabulated_curve(const std::vector<std::pair<double, double>>& knots, double p_bar,
                                            bool invert);

 private:
  TradeoffCurve() = default;
  double clamp_domain(double p, const char* who) const;

  CurveKind kind_ = CurveKind::Unitary;
  double parameter_ = 0.0;
  double p_bar_ = 0.0;
  bool involution_ = false;
  std::vector<double> knot_p_, knot_f_;
};

// f(p) = 1 - t^2 / (1 - p) on [0, 1 - t^2]; an involution, and the unique
// form consistent with the pinned identities f(1 - tc) = 1 - t/c.
TradeoffCurve make_unitary_curve(double t);
// Same functional form with the pure-state overlap s in place of t.
TradeoffCurve make_pure_state_curve(double s);
// Piecewise-linear curve through the given (p, f(p)) knots. Construction
// enforces the domain endpoints, monotonicity, and concavity; `invert`
// reflects a strictly decreasing curve across the diagonal first (the
// channel-swap fix when f(0) > p_bar).
TradeoffCurve make_tabulated_curve(const std::vector<std::pair<double, double>>& knots, double p_bar,
                                   bool invert = false);

}  // namespace qcp
