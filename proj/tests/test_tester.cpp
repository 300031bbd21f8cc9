#include <cmath>
#include <complex>

#include "doctest.h"
#include "qcp/bounds.hpp"
#include "qcp/rng.hpp"
#include "qcp/tester.hpp"

using namespace qcp;

namespace {

ComplexMatrix qubit_phase_pair(double omega_over_pi) {
  ComplexMatrix u1 = ComplexMatrix::identity(2);
  u1(1, 1) = std::polar(1.0, omega_over_pi * M_PI);
  return u1;
}

// Haar-ish random unitary: Gram-Schmidt of a random complex Gaussian-ish matrix.
ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cxd(rng.next_double() - 0.5, rng.next_double() - 0.5);
  for (int j = 0; j < dim; ++j) {
    ComplexVector col = m.column(j);
    for (int k = 0; k < j; ++k) {
      const ComplexVector prev = m.column(k);
      const cxd overlap = dot(prev, col);
      for (int i = 0; i < dim; ++i) col[i] -= overlap * prev[i];
    }
    const double norm = vec_norm(col);
    for (cxd& z : col) z /= norm;
    m.set_column(j, col);
  }
  return m;
}

}  // namespace

TEST_CASE("construct_tester: first-step Gram matrix") {
  const ComplexMatrix u0 = ComplexMatrix::identity(2);
  const ComplexMatrix u1 = qubit_phase_pair(0.4);
  const TesterCertificate cert = construct_tester(u0, u1, 1);
  const cxd tu = cert.t * cert.u;
  CHECK(std::abs(cert.gram_final(1, 0) - tu) <= 1e-10);
  CHECK(std::abs(cert.gram_final(0, 1) - std::conj(tu)) <= 1e-10);
  CHECK(std::abs(cert.gram_final(0, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(cert.gram_final(1, 1) - 1.0) <= 1e-12);
}

TEST_CASE("construct_tester: final Gram equals the model for N = 3") {
  const ComplexMatrix u0 = ComplexMatrix::identity(2);
  const ComplexMatrix u1 = qubit_phase_pair(0.4);
  const TesterCertificate cert = construct_tester(u0, u1, 3);
  const GramModel model = gram_model(cert.t, cert.u, 3);
  CHECK(max_abs_diff(cert.gram_final, model.G) <= 1e-9);
  CHECK(cert.residuals.at("gram_step_residual") <= 1e-9);
  CHECK(cert.residuals.at("interleaved_unitarity_residual") <= 1e-10);
  CHECK(cert.interleaved.size() == 2);
  CHECK(cert.d_prime == 5);
}

TEST_CASE("construct_tester: degenerate pairs are rejected") {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(construct_tester(id, id, 3), ValidationError);
  CHECK_THROWS_AS(construct_tester(id, qubit_phase_pair(1.0), 3), ValidationError);
  CHECK_THROWS_AS(construct_tester(id, qubit_phase_pair(0.4), 3, 1), ValidationError);  // 2*1 < 5
}

TEST_CASE("construct_tester: inner products preserved across steps") {
  const ComplexMatrix u0 = random_unitary(2, 5);
  const ComplexMatrix u1 = random_unitary(2, 6);
  const TesterCertificate cert = construct_tester(u0, u1, 5);
  for (size_t n = 1; n < cert.psi.size(); ++n) {
    const auto& prev = cert.psi[n - 1];
    const auto& curr = cert.psi[n];
    for (size_t i = 0; i < prev.size(); ++i)
      for (size_t j = 0; j < prev.size(); ++j)
        CHECK(std::abs(dot(curr[i], curr[j]) - dot(prev[i], prev[j])) <= 1e-10);
  }
  // Late states are unit vectors.
  for (const auto& states : cert.psi)
    for (const auto& state : states) CHECK(std::abs(vec_norm(state) - 1.0) <= 1e-10);
}

TEST_CASE("build_povm and evaluate_tester: regular branch end to end") {
  const ComplexMatrix u0 = ComplexMatrix::identity(2);
  const ComplexMatrix u1 = qubit_phase_pair(0.8);  // t ~ 0.309
  const int n = 4;
  TesterCertificate cert = construct_tester(u0, u1, n);
  const GramModel model = gram_model(cert.t, cert.u, n);
  build_povm(cert, model);

  // Dual-basis property and POVM structure.
  CHECK(cert.residuals.at("dual_basis_residual") <= 1e-9);
  CHECK(cert.residuals.at("inconclusive_min_eigenvalue") <= 1e-9);
  CHECK(cert.residuals.at("povm_completeness_residual") <= 1e-10);

  const TesterEvaluation eval = evaluate_tester(cert);
  for (int k = 0; k <= n; ++k) {
    CHECK(std::abs(eval.success[k] - (1.0 - cert.t * model.c_list[k])) <= 1e-9);
    CHECK(eval.inconclusive[k] >= -1e-9);
  }
  CHECK(eval.max_wrong <= 1e-9);
  CHECK(std::abs(eval.average - upper_bound_unitary(cert.t, n)) <= 1e-9);
  // Success probabilities alternate between 1 - tc and 1 - t/c.
  CHECK(eval.success[0] == doctest::Approx(eval.success[2]).epsilon(1e-9));
  CHECK(eval.success[1] == doctest::Approx(eval.success[3]).epsilon(1e-9));
}

TEST_CASE("build_povm: singular branch routes through the projector") {
  // t = sqrt(N/(N+2)) makes c = t and the final Gram singular; odd change
  // points get zero success probability and no dual vector.
  const int n = 4;
  const double t = std::sqrt(n / (n + 2.0));
  const double phase = 2.0 * std::acos(t);  // |1 + e^{i phase}|/2 = t
  const ComplexMatrix u0 = ComplexMatrix::identity(2);
  ComplexMatrix u1 = ComplexMatrix::identity(2);
  u1(1, 1) = std::polar(1.0, phase);

  TesterCertificate cert = construct_tester(u0, u1, n);
  REQUIRE(cert.t == doctest::Approx(t).epsilon(1e-12));
  const GramModel model = gram_model(cert.t, cert.u, n);
  REQUIRE(model.branch == GramBranch::Singular);
  build_povm(cert, model);
  const TesterEvaluation eval = evaluate_tester(cert);
  for (int k = 0; k <= n; ++k) {
    const double want = 1.0 - cert.t * model.c_list[k];
    CHECK(std::abs(eval.success[k] - want) <= 1e-9);
    if (k % 2 == 1) CHECK(std::abs(eval.success[k]) <= 1e-9);
  }
  CHECK(eval.max_wrong <= 1e-9);
  CHECK(std::abs(eval.average - upper_bound_unitary(cert.t, n)) <= 1e-9);
}

TEST_CASE("random qubit pairs: construction residuals stay small") {
  for (std::uint64_t seed : {100ULL, 101ULL, 102ULL}) {
    const ComplexMatrix u0 = random_unitary(2, seed * 2);
    const ComplexMatrix u1 = random_unitary(2, seed * 2 + 1);
    for (int n : {1, 4, 6}) {
      TesterCertificate cert = construct_tester(u0, u1, n);
      const GramModel model = gram_model(cert.t, cert.u, n);
      build_povm(cert, model);
      const TesterEvaluation eval = evaluate_tester(cert);
      CHECK(std::abs(eval.average - upper_bound_unitary(cert.t, n)) <= 1e-9);
      CHECK(eval.max_wrong <= 1e-9);
    }
  }
}

TEST_CASE("Gram-side and operator-side feasibility agree") {
  const ComplexMatrix u0 = ComplexMatrix::identity(2);
  const ComplexMatrix u1 = qubit_phase_pair(0.4);
  const int n = 3;
  TesterCertificate cert = construct_tester(u0, u1, n);
  const GramModel model = gram_model(cert.t, cert.u, n);
  build_povm(cert, model);

  // Feasible side: both PSD checks pass (recorded during build_povm).
  CHECK(cert.residuals.at("inconclusive_min_eigenvalue") <= 1e-9);
  CHECK(cert.residuals.at("gram_side_min_eigenvalue") <= 1e-9);

  // Infeasible side: inflating the success targets breaks both checks the
  // same way.
  const std::vector<ComplexVector>& states = cert.final_states();
  const int dim = cert.d * cert.d_prime;
  const double bump = 0.2;
  ComplexMatrix gram_side = cert.gram_final;
  ComplexMatrix op_side = ComplexMatrix::identity(dim);
  const ComplexMatrix pinv = pseudo_inverse(cert.gram_final);
  for (int k = 0; k <= n; ++k) {
    gram_side(k, k) -= cert.x[k] + bump;
    ComplexVector dual(dim, cxd(0.0));
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i < dim; ++i) dual[i] += pinv(j, k) * states[j][i];
    op_side = op_side - outer(dual, dual) * cxd(cert.x[k] + bump, 0.0);
  }
  const PsdCheck gram_check = psd_check(gram_side, 1e-9);
  const PsdCheck op_check = psd_check(op_side, 1e-9);
  CHECK_FALSE(gram_check.ok);
  CHECK_FALSE(op_check.ok);
}

TEST_CASE("evaluate_tester requires a POVM") {
  const TesterCertificate cert =
      construct_tester(ComplexMatrix::identity(2), qubit_phase_pair(0.4), 2);
  CHECK_THROWS_AS(evaluate_tester(cert), ValidationError);
}

TEST_CASE("build_povm rejects infeasible success targets") {
  TesterCertificate cert = construct_tester(ComplexMatrix::identity(2), qubit_phase_pair(0.4), 3);
  const GramModel model = gram_model(cert.t, cert.u, 3);
  // Inflating one target beyond the feasible diagonal must break the PSD
  // certificate (both sides check the same condition).
  cert.x[0] = 0.99;
  CHECK_THROWS_AS(build_povm(cert, model), VerificationError);
}
