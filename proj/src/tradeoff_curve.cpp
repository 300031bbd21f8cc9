#include "qcp/tradeoff_curve.hpp"

#include <algorithm>
#include <cmath>

namespace qcp {

namespace {

bool involution_grid_test(const TradeoffCurve& curve, double* max_residual) {
  double worst = 0.0;
  const double pb = curve.p_bar();
  for (int i = 0; i <= 100; ++i) {
    const double p = pb * i / 100.0;
    worst = std::max(worst, std::abs(curve.eval(curve.eval(p)) - p));
  }
  if (max_residual) *max_residual = worst;
  return worst <= 1e-9;
}

}  // namespace

double TradeoffCurve::clamp_domain(double p, const char* who) const {
  if (p < -1e-12 || p > p_bar_ + 1e-12)
    throw ValidationError(std::string(who) + ": p = " + std::to_string(p) + " outside [0, " +
                          std::to_string(p_bar_) + "]");
  return std::clamp(p, 0.0, p_bar_);
}

double TradeoffCurve::eval(double p) const {
  p = clamp_domain(p, "TradeoffCurve::eval");
  double value = 0.0;
  if (kind_ == CurveKind::Tabulated) {
    const auto it = std::upper_bound(knot_p_.begin(), knot_p_.end(), p);
    const size_t hi = std::min<size_t>(std::max<std::ptrdiff_t>(it - knot_p_.begin(), 1), knot_p_.size() - 1);
    const size_t lo = hi - 1;
    const double width = knot_p_[hi] - knot_p_[lo];
    const double w = width > 0.0 ? (p - knot_p_[lo]) / width : 0.0;
    value = knot_f_[lo] + w * (knot_f_[hi] - knot_f_[lo]);
  } else {
    value = 1.0 - parameter_ * parameter_ / (1.0 - p);
  }
  return std::clamp(value, 0.0, p_bar_);
}

double TradeoffCurve::eval_iterated(double p, int i) const {
  if (i < 0) throw ValidationError("eval_iterated: iteration count must be >= 0");
  double x = clamp_domain(p, "TradeoffCurve::eval_iterated");
  for (int step = 0; step < i; ++step) x = eval(x);
  return x;
}

CurveReport TradeoffCurve::validate() const {
  CurveReport report;
  const int grid = 1000;
  std::vector<double> xs(grid + 1), fs(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    xs[i] = p_bar_ * i / grid;
    fs[i] = eval(xs[i]);
  }
  for (int i = 0; i <= grid; ++i) {
    if (fs[i] < -1e-12 || fs[i] > p_bar_ + 1e-12) {
      report.in_range = false;
      report.notes.push_back("value out of [0, p_bar] near p = " + std::to_string(xs[i]));
      break;
    }
  }
  for (int i = 0; i + 1 <= grid; ++i) {
    if (fs[i + 1] > fs[i] + 1e-10) {
      report.nonincreasing = false;
      report.notes.push_back("monotonicity violated near p = " + std::to_string(xs[i + 1]));
      break;
    }
  }
  for (int i = 0; i + 2 <= grid; ++i) {
    // Midpoint concavity on consecutive grid triples.
    if (fs[i] + fs[i + 2] - 2.0 * fs[i + 1] > 1e-10) {
      report.concave = false;
      report.notes.push_back("concavity violated near p = " + std::to_string(xs[i + 1]));
      break;
    }
  }
  report.involutive = involution_grid_test(*this, &report.max_involution_residual);
  return report;
}

TradeoffCurve make_unitary_curve(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw ValidationError("make_unitary_curve: t must lie strictly inside (0, 1); degenerate t is handled upstream");
  TradeoffCurve curve;
  curve.kind_ = CurveKind::Unitary;
  curve.parameter_ = t;
  curve.p_bar_ = 1.0 - t * t;
  curve.involution_ = true;
  return curve;
}

TradeoffCurve make_pure_state_curve(double s) {
  if (!(s > 0.0 && s < 1.0)) throw ValidationError("make_pure_state_curve: s must lie strictly inside (0, 1)");
  TradeoffCurve curve;
  curve.kind_ = CurveKind::PureState;
  curve.parameter_ = s;
  curve.p_bar_ = 1.0 - s * s;
  curve.involution_ = true;
  return curve;
}

TradeoffCurve make_tabulated_curve(const std::vector<std::pair<double, double>>& knots, double p_bar, bool invert) {
  if (invert) {
    // Reflect across the diagonal: only well-defined for strictly
    // decreasing curves. Re-validates through the normal path below.
    if (knots.size() < 2) throw ValidationError("make_tabulated_curve: need at least 2 knots to invert");
    for (size_t i = 0; i + 1 < knots.size(); ++i)
      if (knots[i + 1].second >= knots[i].second - 1e-12)
        throw ValidationError("make_tabulated_curve: inversion requires a strictly decreasing curve (knot " +
                              std::to_string(i + 1) + ")");
    std::vector<std::pair<double, double>> reflected(knots.size());
    for (size_t i = 0; i < knots.size(); ++i) {
      const auto& k = knots[knots.size() - 1 - i];
      reflected[i] = {k.second, k.first};
    }
    return make_tabulated_curve(reflected, knots.front().second, false);
  }

  if (knots.size() < 2) throw ValidationError("make_tabulated_curve: need at least 2 knots");
  if (std::abs(knots.front().first) > 1e-12) throw ValidationError("make_tabulated_curve: first knot must sit at p = 0");
  if (!(p_bar > 0.0 && p_bar <= 1.0)) throw ValidationError("make_tabulated_curve: p_bar must lie in (0, 1]");
  if (std::abs(knots.back().first - p_bar) > 1e-12)
    throw ValidationError("make_tabulated_curve: last knot must sit at p = p_bar");
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    if (knots[i + 1].first <= knots[i].first)
      throw ValidationError("make_tabulated_curve: knot " + std::to_string(i + 1) + " does not increase in p");
  if (knots.front().second > p_bar + 1e-12)
    throw ValidationError(
        "make_tabulated_curve: f(0) > p_bar; swap the channel roles (pass invert=true to reflect the curve)");
  for (size_t i = 0; i < knots.size(); ++i)
    if (knots[i].second < -1e-12 || knots[i].second > p_bar + 1e-12)
      throw ValidationError("make_tabulated_curve: knot " + std::to_string(i) + " value outside [0, p_bar]");
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    if (knots[i + 1].second > knots[i].second + 1e-12)
      throw ValidationError("make_tabulated_curve: knot " + std::to_string(i + 1) + " increases the value");
  for (size_t i = 0; i + 2 < knots.size(); ++i) {
    const double s0 = (knots[i + 1].second - knots[i].second) / (knots[i + 1].first - knots[i].first);
    const double s1 = (knots[i + 2].second - knots[i + 1].second) / (knots[i + 2].first - knots[i + 1].first);
    if (s1 > s0 + 1e-9)
      throw ValidationError("make_tabulated_curve: chord slope increases at knot " + std::to_string(i + 1) +
                            " (curve not concave)");
  }

  TradeoffCurve curve;
  curve.kind_ = CurveKind::Tabulated;
  curve.p_bar_ = p_bar;
  curve.knot_p_.reserve(knots.size());
  curve.knot_f_.reserve(knots.size());
  for (const auto& [p, f] : knots) {
    curve.knot_p_.push_back(std::clamp(p, 0.0, p_bar));
    curve.knot_f_.push_back(std::clamp(f, 0.0, p_bar));
  }
  curve.involution_ = involution_grid_test(curve, nullptr);
  return curve;
}

}  // namespace qcp
