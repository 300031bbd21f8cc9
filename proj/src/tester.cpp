#include "qcp/tester.hpp"

#include <algorithm>
#include <cmath>

namespace qcp {

namespace {

void record(std::map<std::string, double>& residuals, const std::string& key, double value) {
  auto it = residuals.find(key);
  if (it == residuals.end())
    residuals[key] = value;
  else
    it->second = std::max(it->second, value);
}

void add_scaled(ComplexVector& acc, const ComplexVector& v, cxd s) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += s * v[i];
}

// Gram-Schmidt step: v minus its projection onto the (orthonormal) basis.
ComplexVector residual_against(const ComplexVector& v, const std::vector<ComplexVector>& basis) {
  ComplexVector r = v;
  for (const ComplexVector& b : basis) add_scaled(r, b, -dot(b, r));
  return r;
}

// Orthonormalized residual with one re-orthogonalization pass. A single pass
// can leave a noise-dominated residual pointing back into the span; the
// second pass collapses those below the dependence threshold. Returns an
// empty vector for dependent candidates.
ComplexVector independent_direction(const ComplexVector& v, const std::vector<ComplexVector>& basis) {
  ComplexVector r = residual_against(v, basis);
  if (vec_norm(r) < 1e-6 * std::max(1.0, vec_norm(v))) return {};
  r = residual_against(r, basis);
  const double norm = vec_norm(r);
  if (norm < 1e-6 * std::max(1.0, vec_norm(v))) return {};
  for (cxd& z : r) z /= norm;
  return r;
}

// Extends `seed` (orthonormal) to a full orthonormal basis of C^dim by
// sweeping the canonical basis in order.
std::vector<ComplexVector> complete_basis(std::vector<ComplexVector> seed, int dim) {
  for (int i = 0; i < dim && static_cast<int>(seed.size()) < dim; ++i) {
    ComplexVector e(dim, cxd(0.0));
    e[i] = 1.0;
    ComplexVector r = independent_direction(e, seed);
    if (!r.empty()) seed.push_back(std::move(r));
  }
  if (static_cast<int>(seed.size()) != dim)
    throw VerificationError("complete_basis: failed to span the full space");
  return seed;
}

// First canonical-basis direction orthogonal to the columns of theta AND to
// the realized states. With exact arithmetic the two spans coincide; with a
// singular target Gram the states keep an eps-sized stray direction that the
// free vector must also avoid, or the next Gram row inherits sqrt(eps) noise.
ComplexVector null_direction(const ComplexMatrix& theta, const ComplexMatrix& states) {
  std::vector<ComplexVector> range;
  auto absorb = [&](const ComplexMatrix& m) {
    for (int j = 0; j < m.cols(); ++j) {
      // Deliberately loose threshold: even eps-sized stray directions of the
      // realized states must be swept out of the free direction.
      ComplexVector r = residual_against(m.column(j), range);
      double norm = vec_norm(r);
      if (norm <= 1e-12) continue;
      r = residual_against(r, range);
      norm = vec_norm(r);
      if (norm <= 1e-12) continue;
      for (cxd& z : r) z /= norm;
      range.push_back(std::move(r));
    }
  };
  absorb(theta);
  absorb(states);
  for (int i = 0; i < theta.rows(); ++i) {
    ComplexVector e(theta.rows(), cxd(0.0));
    e[i] = 1.0;
    ComplexVector r = independent_direction(e, range);
    if (!r.empty()) return r;
  }
  throw VerificationError("null_direction: ancilla too small, no free direction left");
}

// Unitary mapping a1 -> b1 and a2 -> b2 (pairs with matching inner products),
// extended by identically ordered canonical completions on both sides.
ComplexMatrix unitary_from_pairs(const ComplexVector& a1, const ComplexVector& a2, const ComplexVector& b1,
                                 const ComplexVector& b2) {
  const int dim = static_cast<int>(a1.size());
  auto orthonormal_pair = [&](const ComplexVector& v1, const ComplexVector& v2) {
    std::vector<ComplexVector> basis;
    ComplexVector first = v1;
    const double n1 = vec_norm(first);
    for (cxd& z : first) z /= n1;
    basis.push_back(std::move(first));
    ComplexVector second = residual_against(v2, basis);
    double n2 = vec_norm(second);
    if (n2 < 1e-12) throw VerificationError("unitary_from_pairs: pair is numerically collinear");
    second = residual_against(second, basis);
    n2 = vec_norm(second);
    if (n2 < 1e-12) throw VerificationError("unitary_from_pairs: pair is numerically collinear");
    for (cxd& z : second) z /= n2;
    basis.push_back(std::move(second));
    return basis;
  };
  const std::vector<ComplexVector> basis_a = complete_basis(orthonormal_pair(a1, a2), dim);
  const std::vector<ComplexVector> basis_b = complete_basis(orthonormal_pair(b1, b2), dim);
  ComplexMatrix map(dim, dim);
  for (int k = 0; k < dim; ++k) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) map(i, j) += basis_b[k][i] * std::conj(basis_a[k][j]);
  }
  return map;
}

ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  size_t idx = 0;
  for (const cxd& x : a)
    for (const cxd& y : b) out[idx++] = x * y;
  return out;
}

ComplexMatrix gram_of(const std::vector<ComplexVector>& states) {
  const int n = static_cast<int>(states.size());
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = dot(states[i], states[j]);
  return g;
}

}  // namespace

TesterCertificate construct_tester(const ComplexMatrix& u0, const ComplexMatrix& u1, int n_steps, int d_prime) {
  if (n_steps < 1) throw ValidationError("construct_tester: N must be >= 1");

  TesterCertificate cert;
  cert.analysis = analyze_unitary_pair(u0, u1);
  cert.N = n_steps;
  cert.d = cert.analysis.dim;
  cert.d_prime = d_prime > 0 ? d_prime : n_steps + 2;
  cert.t = cert.analysis.t;
  if (!(cert.t > 1e-9 && cert.t < 1.0 - 1e-9))
    throw ValidationError("construct_tester: requires 0 < t < 1 (degenerate pairs are handled upstream)");
  if (cert.d * cert.d_prime < n_steps + 2)
    throw ValidationError("construct_tester: d * d_prime must be at least N + 2");
  cert.u = cert.analysis.u;

  const GramModel model = gram_model(cert.t, cert.u, n_steps);
  const int dim = cert.d * cert.d_prime;

  // Divide the closest-edge eigenvalue phase out of U1 so the realized inner
  // products take the normalized form t u^(i-j) sqrt(c_i c_j). The channel
  // itself is unchanged by a global phase.
  const cxd gauge = cert.analysis.lambda0 / std::abs(cert.analysis.lambda0);
  const ComplexMatrix u1_gauged = u1 * (cxd(1.0, 0.0) / gauge);
  const ComplexMatrix u_rel = u0.adjoint() * u1_gauged;
  const ComplexMatrix id_anc = ComplexMatrix::identity(cert.d_prime);
  const ComplexMatrix u0_full = kron(u0, id_anc);
  const ComplexMatrix u1_full = kron(u1_gauged, id_anc);

  ComplexVector anc0(cert.d_prime, cxd(0.0));
  anc0[0] = 1.0;
  cert.probe = kron_vec(cert.analysis.ket_plus, anc0);

  std::vector<ComplexVector> states;
  states.push_back(matvec(u1_full, cert.probe));  // change before step 1
  states.push_back(matvec(u0_full, cert.probe));  // change at or after step 1
  cert.psi.push_back(states);
  record(cert.residuals, "gram_step_residual", max_abs_diff(gram_of(states), gram_matrix_of_order(model, 1)));

  const ComplexVector target_plus = cert.probe;
  const ComplexVector target_check = kron_vec(matvec(u_rel.adjoint(), cert.analysis.ket_plus), anc0);
  const cxd tu = cert.t * cert.u;

  for (int n = 1; n < n_steps; ++n) {
    const ComplexMatrix gram_n = gram_matrix_of_order(model, n);
    const ComplexMatrix root_pinv = psd_sqrt_pinv(gram_n);

    ComplexMatrix state_mat(dim, n + 1);
    for (int k = 0; k <= n; ++k) state_mat.set_column(k, states[k]);
    const ComplexMatrix theta = state_mat * root_pinv;

    const ComplexVector nu = nu_prime(model, n);
    const ComplexVector nu_second = matvec(root_pinv, nu);
    const double norm_sq = dot(nu_second, nu_second).real();
    record(cert.residuals, "nu_norm_excess", std::max(0.0, norm_sq - 1.0));
    if (norm_sq > 1.0 + 1e-9)
      throw VerificationError("construct_tester: extension vector norm exceeds 1 at step " + std::to_string(n));

    ComplexVector check_vec = matvec(theta, nu_second);
    ComplexVector free_dir = null_direction(theta, state_mat);
    add_scaled(check_vec, free_dir, std::sqrt(std::max(0.0, 1.0 - norm_sq)));

    const cxd overlap = dot(check_vec, states[n]);
    record(cert.residuals, "extension_overlap_residual", std::abs(overlap - tu));
    if (std::abs(overlap - tu) > 1e-9)
      throw VerificationError("construct_tester: extension overlap mismatch at step " + std::to_string(n));

    const ComplexMatrix d_step = unitary_from_pairs(states[n], check_vec, target_plus, target_check);
    record(cert.residuals, "interleaved_unitarity_residual",
           max_abs_diff(d_step.adjoint() * d_step, ComplexMatrix::identity(dim)));
    cert.interleaved.push_back(d_step);

    std::vector<ComplexVector> next(n + 2);
    for (int k = 0; k <= n; ++k) next[k] = matvec(u1_full, matvec(d_step, states[k]));
    next[n + 1] = matvec(u0_full, matvec(d_step, states[n]));
    states.swap(next);
    cert.psi.push_back(states);

    const double gram_residual = max_abs_diff(gram_of(states), gram_matrix_of_order(model, n + 1));
    record(cert.residuals, "gram_step_residual", gram_residual);
    if (gram_residual > 1e-9)
      throw VerificationError("construct_tester: Gram mismatch " + std::to_string(gram_residual) + " after step " +
                              std::to_string(n + 1));
  }

  cert.gram_final = gram_of(states);
  cert.x.resize(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) cert.x[k] = 1.0 - cert.t * model.c_list[k];
  for (const ComplexVector& s : states)
    record(cert.residuals, "state_norm_residual", std::abs(vec_norm(s) - 1.0));
  return cert;
}

TesterCertificate& build_povm(TesterCertificate& cert, const GramModel& model) {
  const int n_steps = cert.N;
  const int dim = cert.d * cert.d_prime;
  const std::vector<ComplexVector>& states = cert.final_states();

  const ComplexMatrix gram = cert.gram_final;
  const ComplexMatrix pinv = pseudo_inverse(gram);
  const ComplexMatrix projector = pinv * gram;  // numeric realization of Xi
  record(cert.residuals, "xi_vs_model_residual", max_abs_diff(projector, model.Xi));

  // Index k admits a dual vector iff row k of Xi is the canonical row;
  // otherwise the success probability must already be zero.
  std::vector<ComplexVector> duals(n_steps + 1, ComplexVector(dim, cxd(0.0)));
  ComplexMatrix pi_sum(dim, dim);
  std::vector<ComplexMatrix> povm(n_steps + 2, ComplexMatrix(dim, dim));
  for (int k = 0; k <= n_steps; ++k) {
    double row_gap = 0.0;
    for (int j = 0; j <= n_steps; ++j)
      row_gap = std::max(row_gap, std::abs(projector(k, j) - (k == j ? 1.0 : 0.0)));
    const bool has_dual = row_gap <= 1e-6;
    if (!has_dual) {
      if (cert.x[k] > 1e-9)
        throw VerificationError("build_povm: index " + std::to_string(k) +
                                " has no dual vector but a positive target success probability");
      cert.x[k] = 0.0;
      continue;
    }
    for (int j = 0; j <= n_steps; ++j) add_scaled(duals[k], states[j], pinv(j, k));
    double dual_residual = 0.0;
    for (int j = 0; j <= n_steps; ++j)
      dual_residual = std::max(dual_residual, std::abs(dot(duals[k], states[j]) - (k == j ? 1.0 : 0.0)));
    record(cert.residuals, "dual_basis_residual", dual_residual);
    const double weight = std::max(cert.x[k], 0.0);
    povm[k] = outer(duals[k], duals[k]) * cxd(weight, 0.0);
    pi_sum = pi_sum + povm[k];
  }

  povm[n_steps + 1] = ComplexMatrix::identity(dim) - pi_sum;
  const PsdCheck direct = psd_check(povm[n_steps + 1], 1e-9);
  record(cert.residuals, "inconclusive_min_eigenvalue", -std::min(0.0, direct.min_eigenvalue));

  // Gram-side criterion: G minus the diagonal of success probabilities.
  ComplexMatrix gram_side = gram;
  for (int k = 0; k <= n_steps; ++k) gram_side(k, k) -= cert.x[k];
  const PsdCheck viaGram = psd_check(gram_side, 1e-9);
  record(cert.residuals, "gram_side_min_eigenvalue", -std::min(0.0, viaGram.min_eigenvalue));

  if (!direct.ok)
    throw VerificationError("build_povm: inconclusive element is not PSD (min eigenvalue " +
                            std::to_string(direct.min_eigenvalue) + ")");
  if (!viaGram.ok)
    throw VerificationError("build_povm: Gram-side feasibility check failed (min eigenvalue " +
                            std::to_string(viaGram.min_eigenvalue) + ")");

  ComplexMatrix total = pi_sum + povm[n_steps + 1];
  record(cert.residuals, "povm_completeness_residual", max_abs_diff(total, ComplexMatrix::identity(dim)));
  cert.povm = std::move(povm);
  return cert;
}

TesterEvaluation evaluate_tester(const TesterCertificate& cert) {
  if (cert.povm.empty()) throw ValidationError("evaluate_tester: POVM not built");
  const int n_steps = cert.N;
  const std::vector<ComplexVector>& states = cert.final_states();

  TesterEvaluation eval;
  eval.success.resize(n_steps + 1);
  eval.inconclusive.resize(n_steps + 1);
  eval.outcome.assign(n_steps + 1, std::vector<double>(n_steps + 2, 0.0));
  double total = 0.0;
  for (int k = 0; k <= n_steps; ++k) {
    for (int m = 0; m <= n_steps + 1; ++m) {
      const double prob = dot(states[k], matvec(cert.povm[m], states[k])).real();
      eval.outcome[k][m] = prob;
      if (m == k) {
        eval.success[k] = prob;
      } else if (m == n_steps + 1) {
        eval.inconclusive[k] = prob;
      } else {
        eval.max_wrong = std::max(eval.max_wrong, std::abs(prob));
      }
    }
    total += eval.success[k];
  }
  eval.average = total / (n_steps + 1);
  return eval;
}

}  // namespace qcp
