#include "qcp/gram_model.hpp"

#include <algorithm>
#include <cmath>

namespace qcp {

namespace {

constexpr double kBranchTol = 1e-9;

cxd unit_power(cxd u, int k) {
  // u^k for possibly negative k, |u| = 1.
  cxd base = k >= 0 ? u : std::conj(u);
  int e = std::abs(k);
  cxd acc(1.0, 0.0);
  while (e-- > 0) acc *= base;
  return acc;
}

int odd_index_count(int n) { return (n % 2 == 0) ? n / 2 : (n + 1) / 2; }

}  // namespace

std::array<double, 5> closed_form_coefficients(double t, double c, int n) {
  const int m = odd_index_count(n);
  const auto f1 = [&](int l) { return m * t * (1.0 - c * c) + (1.0 + l * t * c) * (c - t); };
  const auto f2 = [&](int l) {
    return (n - m + 1) * t * (1.0 - 1.0 / (c * c)) + (1.0 + l * t / c) * (1.0 / c - t);
  };
  std::array<double, 5> a{};
  if (std::abs(c - t) > kBranchTol) {
    a[0] = f1(n - 1) / ((1.0 - t * c) * f1(n));
    a[1] = f2(n - 1) / ((1.0 - t / c) * f2(n));
    a[2] = -t * c * (c - t) / ((1.0 - t * c) * f1(n));
    a[3] = -(t / c) * (1.0 / c - t) / ((1.0 - t / c) * f2(n));
    a[4] = -t * c / f1(n);
  } else {
    a[0] = f1(n - 1) / ((1.0 - t * c) * f1(n));
    a[1] = a[3] = (1.0 + (n - m) * t * t) / (m * static_cast<double>(m) * (1.0 - t * t));
    a[2] = 0.0;
    a[4] = -t * c / f1(n);
  }
  return a;
}

GramModel gram_model(double t, cxd u, int n_steps) {
  if (n_steps < 1) throw ValidationError("gram_model: N must be >= 1");
  if (!(t > 0.0 && t < 1.0)) throw ValidationError("gram_model: t must lie strictly inside (0, 1)");
  if (std::abs(std::abs(u) - 1.0) > 1e-9) throw ValidationError("gram_model: u must have unit modulus");
  u /= std::abs(u);

  GramModel model;
  model.N = n_steps;
  model.t = t;
  model.u = u;
  model.c =
      (n_steps % 2 == 1) ? 1.0 : std::max(t, std::sqrt(static_cast<double>(n_steps) / (n_steps + 2)));
  model.branch = std::abs(model.c - t) <= kBranchTol ? GramBranch::Singular : GramBranch::Regular;
  model.m = odd_index_count(n_steps);

  model.c_list.resize(n_steps + 2);
  for (int i = 0; i <= n_steps + 1; ++i) model.c_list[i] = (i % 2 == 0) ? model.c : 1.0 / model.c;

  model.G = ComplexMatrix(n_steps + 1, n_steps + 1);
  for (int i = 0; i <= n_steps; ++i) {
    model.G(i, i) = 1.0;
    for (int j = 0; j <= n_steps; ++j) {
      if (i == j) continue;
      model.G(i, j) = t * unit_power(u, i - j) * std::sqrt(model.c_list[i] * model.c_list[j]);
    }
  }
  model.mu.resize(n_steps + 1);
  for (int i = 0; i <= n_steps; ++i) model.mu[i] = unit_power(u, i) * std::sqrt(model.c_list[i]);

  model.a = closed_form_coefficients(t, model.c, n_steps);
  model.Xi = xi_projector(model, n_steps);
  return model;
}

ComplexMatrix gram_matrix_of_order(const GramModel& model, int n) {
  if (n < 0 || n > model.N) throw ValidationError("gram_matrix_of_order: order out of range");
  ComplexMatrix sub(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) sub(i, j) = model.G(i, j);
  return sub;
}

ComplexMatrix closed_form_pinv(const GramModel& model, int n) {
  const std::array<double, 5> a = closed_form_coefficients(model.t, model.c, n);
  ComplexMatrix out(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) {
        out(i, j) = (i % 2 == 0) ? a[0] : a[1];
      } else if (i % 2 == 0 && j % 2 == 0) {
        out(i, j) = a[2] * unit_power(model.u, i - j);
      } else if (i % 2 == 1 && j % 2 == 1) {
        out(i, j) = a[3] * unit_power(model.u, i - j);
      } else {
        out(i, j) = a[4] * unit_power(model.u, i - j);
      }
    }
  }
  return out;
}

ComplexMatrix xi_projector(const GramModel& model, int n) {
  if (model.branch == GramBranch::Regular) return ComplexMatrix::identity(n + 1);
  const int m = odd_index_count(n);
  ComplexMatrix xi(n + 1, n + 1);
  for (int i = 0; 2 * i <= n; ++i) xi(2 * i, 2 * i) = 1.0;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) xi(2 * i - 1, 2 * j - 1) = unit_power(model.u, 2 * (i - j)) / static_cast<double>(m);
  return xi;
}

ComplexVector nu_prime(const GramModel& model, int n) {
  if (n < 1 || n > model.N) throw ValidationError("nu_prime: order out of range");
  ComplexVector nu(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double mag = model.t * std::sqrt(model.c_list[n + 1] * model.c_list[j]);
    nu[j] = std::conj(unit_power(model.u, n + 1 - j)) * mag;
  }
  return nu;
}

GramCertificateReport verify_gram_certificate(const GramModel& model) {
  GramCertificateReport report;
  auto check = [&](const std::string& name, double residual, double threshold) {
    const bool ok = residual <= threshold;
    report.checks.push_back({name, residual, threshold, ok});
    if (!ok) report.pass = false;
  };

  const int n = model.N;
  ComplexMatrix slack = model.G;
  for (int i = 0; i <= n; ++i) slack(i, i) -= 1.0 - model.t * model.c_list[i];

  // G minus the success diagonal must be PSD, and equal to t |mu><mu|.
  const PsdCheck psd = psd_check(slack, 1e-9);
  check("gram_slack_min_eigenvalue", std::max(0.0, -psd.min_eigenvalue), 1e-9);
  ComplexMatrix rank_one = outer(model.mu, model.mu) * cxd(model.t, 0.0);
  check("gram_slack_equals_rank_one", max_abs_diff(slack, rank_one), 1e-10);

  // Closed-form pseudo-inverse against the numeric one. The numeric oracle
  // is only accurate to cond(G) * eps, and just below the branch switch the
  // coefficient denominators (1 - tc) f1(n) shrink with c - t, so the
  // comparison threshold inflates with the conditioning. Past 1e12 the
  // comparison is vacuous and the certificate stays with the pseudo-inverse
  // identities alone.
  const HermitianEigen spectrum = hermitian_eigensystem(model.G);
  double min_positive = spectrum.values.back();
  for (double v : spectrum.values)
    if (v > 1e-12) min_positive = std::min(min_positive, v);
  const double condition = spectrum.values.back() / std::max(min_positive, 1e-300);
  const double machine = 2.220446049250313e-16;

  const ComplexMatrix numeric = pseudo_inverse(model.G);
  const ComplexMatrix assembled = closed_form_pinv(model, n);
  if (condition <= 1e12) {
    const double scale = std::max(1.0, assembled.max_abs());
    const double tol = std::max(1e-8, 10.0 * condition * machine * scale);
    check("closed_form_pinv_vs_numeric", max_abs_diff(assembled, numeric), tol);
    check("pinv_times_gram_equals_xi", max_abs_diff(assembled * model.G, model.Xi),
          std::max(1e-8, 10.0 * condition * machine * scale));
  } else {
    check("near_singular_routed_to_pseudo_inverse", max_abs_diff(numeric * model.G * numeric, numeric),
          1e-8 * std::max(1.0, numeric.max_abs()));
  }

  if (model.branch == GramBranch::Regular) {
    if (condition <= 1e12)
      check("gram_times_pinv_identity", max_abs_diff(model.G * assembled, ComplexMatrix::identity(n + 1)),
            std::max(1e-8, 10.0 * condition * machine * std::max(1.0, assembled.max_abs())));
  } else {
    // rank(G) = rank(Xi) = N + 2 - m.
    const HermitianEigen ex = hermitian_eigensystem(model.Xi);
    int rank_g = 0, rank_x = 0;
    for (double v : spectrum.values)
      if (v > 1e-8) ++rank_g;
    for (double v : ex.values)
      if (v > 1e-8) ++rank_x;
    const int expected = n + 2 - model.m;
    check("singular_rank_gram", std::abs(rank_g - expected), 0.0);
    check("singular_rank_xi", std::abs(rank_x - expected), 0.0);
    check("xi_idempotent", max_abs_diff(model.Xi * model.Xi, model.Xi), 1e-10);
  }

  if (!report.pass) {
    std::string failed;
    for (const GramCheck& c : report.checks)
      if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
    throw VerificationError("verify_gram_certificate: failed checks: " + failed);
  }
  return report;
}

NuConditionReport verify_nu_condition(const GramModel& model) {
  NuConditionReport report;
  const double machine = 2.220446049250313e-16;
  double quad_slack = 1e-9;
  double throw_slack = 1e-6;
  for (int n = 1; n <= model.N; ++n) {
    const ComplexVector nu = nu_prime(model, n);
    const ComplexMatrix gram = gram_matrix_of_order(model, n);
    const ComplexMatrix pinv = pseudo_inverse(gram);
    const ComplexMatrix xi = xi_projector(model, n);

    // The numeric quadratic form carries cond(G) * eps of noise; widen the
    // acceptance band accordingly near the branch switch.
    const HermitianEigen spectrum = hermitian_eigensystem(gram);
    double min_positive = spectrum.values.back();
    for (double v : spectrum.values)
      if (v > 1e-12) min_positive = std::min(min_positive, v);
    const double condition = spectrum.values.back() / std::max(min_positive, 1e-300);
    quad_slack = std::max(quad_slack, 10.0 * condition * machine);
    throw_slack = std::max(throw_slack, 1000.0 * condition * machine);

    NuStep step;
    step.n = n;
    const ComplexVector projected = matvec(xi, nu);
    for (size_t i = 0; i < nu.size(); ++i)
      step.xi_residual = std::max(step.xi_residual, std::abs(projected[i] - nu[i]));
    step.quad = dot(nu, matvec(pinv, nu)).real();

    const ComplexMatrix closed = closed_form_pinv(model, n);
    const double closed_quad = dot(nu, matvec(closed, nu)).real();
    step.closed_form_gap = std::abs(step.quad - closed_quad);

    report.max_xi_residual = std::max(report.max_xi_residual, step.xi_residual);
    report.max_quad = std::max(report.max_quad, step.quad);
    report.steps.push_back(step);

    if (step.quad > 1.0 + throw_slack)
      throw VerificationError("verify_nu_condition: quadratic form " + std::to_string(step.quad) +
                              " exceeds 1 at n = " + std::to_string(n));
  }
  report.pass = report.max_quad <= 1.0 + quad_slack && report.max_xi_residual <= 1e-8;
  return report;
}

}  // namespace qcp
