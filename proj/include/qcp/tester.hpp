#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcp/complex_matrix.hpp"
#include "qcp/gram_model.hpp"
#include "qcp/unitary_pair.hpp"

namespace qcp {

// The explicit optimal tester: probe state, interleaved unitaries, the full
// ladder of intermediate states, and (after build_povm) the zero-error
// measurement. `residuals` collects every numerical check made during
// construction.
struct TesterCertificate {
  int N = 0;
  int d = 0;
  int d_prime = 0;
  double t = 0.0;
  cxd u{1.0, 0.0};
  UnitaryPairAnalysis analysis;
  ComplexVector probe;                           // |+> (x) |0>
  std::vector<ComplexMatrix> interleaved;        // interleaved[i] applied before step i+2
  std::vector<std::vector<ComplexVector>> psi;   // psi[n-1][k], n = 1..N, k = 0..n
  ComplexMatrix gram_final;
  std::vector<double> x;                         // x_k = 1 - t c_k
  std::vector<ComplexMatrix> povm;               // N+2 elements once built
  std::map<std::string, double> residuals;

  const std::vector<ComplexVector>& final_states() const { return psi.back(); }
};

// Sequentially builds the interleaved unitaries so that after every step the
// realized Gram matrix matches the model within 1e-9. d_prime < 0 selects
// the default ancilla size N + 2.
TesterCertificate construct_tester(const ComplexMatrix& u0, const ComplexMatrix& u1, int n_steps, int d_prime = -1);

// Fills the POVM from the dual basis of the final states: Pi_m =
// x_m |dual_m><dual_m| plus the inconclusive remainder. Verifies PSD of the
// remainder both directly and through the Gram-side criterion.
TesterCertificate& build_povm(TesterCertificate& cert, const GramModel& model);

struct TesterEvaluation {
  std::vector<double> success;                 // <psi_k| Pi_k |psi_k>
  std::vector<std::vector<double>> outcome;    // outcome[k][m], m = 0..N+1
  std::vector<double> inconclusive;
  double average = 0.0;
  double max_wrong = 0.0;  // largest off-diagonal conclusive probability
};

TesterEvaluation evaluate_tester(const TesterCertificate& cert);

}  // namespace qcp
