#pragma once

#include <utility>
#include <vector>

#include "qcp/complex_matrix.hpp"
#include "qcp/polygon.hpp"

namespace qcp {

// Eigenvalue geometry of U0^dagger U1: the hull distance t, the closest-edge
// eigenvalue pair, the optimal probe, and the Gram phase u.
struct UnitaryPairAnalysis {
  int dim = 0;
  std::vector<cxd> eigenvalues;
  double t = 0.0;
  cxd lambda0{1.0, 0.0};
  cxd lambda1{1.0, 0.0};
  std::pair<int, int> edge{0, 0};
  ComplexVector ket_plus;
  cxd omega{1.0, 0.0};  // lambda1 / lambda0
  cxd u{1.0, 0.0};      // (1 + omega) / (2t); normalized so u^2 = omega
  bool u_defined = false;
};

// t from the hull of the eigenvalues of U0^dagger U1; the probe |+> is the
// equal superposition of the closest-edge eigenvectors. At t = 0 the probe
// becomes the convex combination achieving exactly zero overlap and u is
// flagged undefined.
UnitaryPairAnalysis analyze_unitary_pair(const ComplexMatrix& u0, const ComplexMatrix& u1);

}  // namespace qcp
