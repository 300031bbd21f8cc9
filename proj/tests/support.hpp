#pragma once

// Shared helpers for the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "qcp/complex_matrix.hpp"
#include "qcp/rng.hpp"
#include "qcp/tradeoff_curve.hpp"

namespace qcp_test {

// Random concave nonincreasing piecewise-linear curve: sorted negative
// slopes rescaled to land on a chosen endpoint value.
inline qcp::TradeoffCurve random_concave_curve(std::uint64_t seed) {
  qcp::SplitMix64 rng(seed);
  const double p_bar = 0.5 + 0.5 * rng.next_double();
  const int segments = 6;
  std::vector<double> slopes(segments);
  for (double& s : slopes) s = -2.0 * rng.next_double();
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  const double f0 = p_bar * (0.4 + 0.6 * rng.next_double());
  const double f_end = f0 * 0.4 * rng.next_double();
  double drop = 0.0;
  const double width = p_bar / segments;
  for (double s : slopes) drop += s * width;
  const double rescale = drop < -1e-12 ? (f_end - f0) / drop : 0.0;

  std::vector<std::pair<double, double>> knots;
  double p = 0.0, f = f0;
  knots.emplace_back(p, f);
  for (int i = 0; i < segments; ++i) {
    p = (i == segments - 1) ? p_bar : p + width;
    f += slopes[i] * rescale * width;
    knots.emplace_back(p, std::max(f, 0.0));
  }
  return qcp::make_tabulated_curve(knots, p_bar);
}

// Haar-ish random unitary: Gram-Schmidt of a random square matrix.
inline qcp::ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  qcp::SplitMix64 rng(seed);
  qcp::ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = qcp::cxd(rng.next_double() - 0.5, rng.next_double() - 0.5);
  for (int j = 0; j < dim; ++j) {
    qcp::ComplexVector col = m.column(j);
    for (int k = 0; k < j; ++k) {
      const qcp::ComplexVector prev = m.column(k);
      const qcp::cxd overlap = qcp::dot(prev, col);
      for (int i = 0; i < dim; ++i) col[i] -= overlap * prev[i];
    }
    const double norm = qcp::vec_norm(col);
    for (qcp::cxd& z : col) z /= norm;
    m.set_column(j, col);
  }
  return m;
}

}  // namespace qcp_test
