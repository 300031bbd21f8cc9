#pragma once

#include <array>
#include <string>
#include <vector>

#include "qcp/complex_matrix.hpp"

namespace qcp {

enum class GramBranch { Regular, Singular };

// The target Gram matrix of the optimal tester's final states, together with
// its closed-form pseudo-inverse data. Entry (i, j) is t u^{i-j} sqrt(c_i c_j)
// off the diagonal and 1 on it; equivalently diag(1 - t c_i) + t |mu><mu|.
struct GramModel {
  int N = 0;
  double t = 0.0;
  cxd u{1.0, 0.0};
  double c = 1.0;
  std::vector<double> c_list;  // c_0 .. c_{N+1} (alternating c, 1/c)
  ComplexMatrix G;             // (N+1) x (N+1)
  ComplexVector mu;
  GramBranch branch = GramBranch::Regular;
  int m = 0;                     // count of odd indices 0..N
  std::array<double, 5> a{};     // pseudo-inverse pattern coefficients at order N
  ComplexMatrix Xi;              // projector onto the range of G (order N)
};

GramModel gram_model(double t, cxd u, int n_steps);

// Leading (n+1)x(n+1) principal submatrix of the model Gram matrix.
ComplexMatrix gram_matrix_of_order(const GramModel& model, int n);

// Pattern coefficients of the pseudo-inverse of the order-n submatrix
// (branch decided by c vs t).
std::array<double, 5> closed_form_coefficients(double t, double c, int n);

// Pseudo-inverse of the order-n submatrix assembled from the pattern:
// a0/a1 on the even/odd diagonal, a2/a3/a4 u^{i-j} off it by index parity.
ComplexMatrix closed_form_pinv(const GramModel& model, int n);

// Projector onto the range of the order-n submatrix: identity in the regular
// branch, the even-index + averaged-odd-index projector when c = t.
ComplexMatrix xi_projector(const GramModel& model, int n);

// Cross-Gram row of the next state against the current ones, as a ket:
// <j|nu'> = conj(t u^{n+1-j} sqrt(c_{n+1} c_j)), j = 0..n.
ComplexVector nu_prime(const GramModel& model, int n);

struct GramCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct GramCertificateReport {
  std::vector<GramCheck> checks;
  bool pass = true;
};

// Certifies the Gram-side feasibility condition (G minus the success
// diagonal is PSD and equals t |mu><mu|) and the closed-form pseudo-inverse
// against the numeric one.
GramCertificateReport verify_gram_certificate(const GramModel& model);

struct NuStep {
  int n = 0;
  double xi_residual = 0.0;        // || <nu'| Xi - <nu'| ||_inf
  double quad = 0.0;               // <nu'| G^+ |nu'>
  double closed_form_gap = 0.0;    // |quad(numeric) - quad(closed form)|
};

struct NuConditionReport {
  std::vector<NuStep> steps;  // n = 1 .. N
  double max_xi_residual = 0.0;
  double max_quad = 0.0;
  bool pass = true;  // every quad <= 1 + 1e-9
};

// The extension condition that lets each construction step realize the next
// Gram row: nu' lies in the range of G^(n) and its G^+ quadratic form is at
// most 1. Throws if any quad exceeds 1 + 1e-6.
NuConditionReport verify_nu_condition(const GramModel& model);

}  // namespace qcp
