#include "qcp/unitary_pair.hpp"

#include <algorithm>
#include <cmath>

namespace qcp {

UnitaryPairAnalysis analyze_unitary_pair(const ComplexMatrix& u0, const ComplexMatrix& u1) {
  if (u0.rows() != u0.cols() || u1.rows() != u1.cols() || u0.rows() != u1.rows())
    throw ValidationError("analyze_unitary_pair: dimension mismatch");
  if (!u0.is_unitary(1e-10)) throw ValidationError("analyze_unitary_pair: U0 is not unitary");
  if (!u1.is_unitary(1e-10)) throw ValidationError("analyze_unitary_pair: U1 is not unitary");

  const ComplexMatrix u_rel = u0.adjoint() * u1;
  NormalEigen eig = normal_eigensystem(u_rel);
  // Eigenvalues of a unitary sit on the unit circle; snap off rounding noise
  // before the hull computation.
  for (cxd& z : eig.values) z /= std::abs(z);

  UnitaryPairAnalysis out;
  out.dim = u0.rows();
  out.eigenvalues = eig.values;

  const PolygonResult poly = distance_to_polygon(eig.values);
  out.t = std::clamp(poly.t, 0.0, 1.0);
  out.edge = poly.edge;
  out.lambda0 = eig.values[poly.edge.first];
  out.lambda1 = eig.values[poly.edge.second];
  out.omega = out.lambda1 / out.lambda0;

  if (out.t <= 1e-10) {
    // Perfect single-shot discrimination: mix the eigenvectors whose
    // eigenvalue combination cancels exactly.
    out.t = 0.0;
    out.u_defined = false;
    out.ket_plus.assign(out.dim, cxd(0.0));
    for (const auto& [index, weight] : zero_overlap_weights(eig.values)) {
      const ComplexVector v = eig.vectors.column(index);
      const double amp = std::sqrt(weight);
      for (int i = 0; i < out.dim; ++i) out.ket_plus[i] += amp * v[i];
    }
    return out;
  }

  if (poly.edge.first == poly.edge.second) {
    // Single hull vertex: the pair is identical up to a phase.
    out.t = 1.0;
    out.omega = 1.0;
    out.u = 1.0;
    out.u_defined = true;
    out.ket_plus = eig.vectors.column(poly.edge.first);
    return out;
  }

  const ComplexVector v0 = eig.vectors.column(poly.edge.first);
  const ComplexVector v1 = eig.vectors.column(poly.edge.second);
  out.ket_plus.resize(out.dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < out.dim; ++i) out.ket_plus[i] = inv_sqrt2 * (v0[i] + v1[i]);

  out.u = (1.0 + out.omega) / (2.0 * out.t);
  out.u /= std::abs(out.u);
  out.u_defined = true;
  return out;
}

}  // namespace qcp
