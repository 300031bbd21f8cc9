#include "qcp/cli_runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "json.hpp"
#include "qcp/adaptive.hpp"
#include "qcp/bounds.hpp"
#include "qcp/gram_model.hpp"
#include "qcp/rng.hpp"
#include "qcp/tester.hpp"
#include "qcp/tradeoff_curve.hpp"
#include "qcp/unitary_pair.hpp"

namespace qcp {

namespace {

using nlohmann::ordered_json;

// Reals are reported at 12 significant digits everywhere.
double round_sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format_sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ordered_json complex_pair(cxd z) { return {round_sig(z.real()), round_sig(z.imag())}; }

ordered_json matrix_rows(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_pairs(const ComplexVector& v) {
  ordered_json out = ordered_json::array();
  for (const cxd& z : v) out.push_back(complex_pair(z));
  return out;
}

struct ProblemSetup {
  enum class Kind { Unitary, PureState, Tabulated } kind = Kind::Tabulated;
  std::optional<double> limit;  // t (unitary) or s (pure state)
  std::optional<TradeoffCurve> curve;
  std::optional<UnitaryPairAnalysis> analysis;
  std::optional<std::pair<ComplexMatrix, ComplexMatrix>> matrices;
  bool degenerate_zero = false;  // t = 0: everything identifiable
  bool degenerate_one = false;   // t = 1: nothing identifiable
};

std::pair<ComplexMatrix, ComplexMatrix> qubit_pair_from_eigenphase(double omega_over_pi) {
  ComplexMatrix u0 = ComplexMatrix::identity(2);
  ComplexMatrix u1 = ComplexMatrix::identity(2);
  u1(1, 1) = std::polar(1.0, omega_over_pi * M_PI);
  return {u0, u1};
}

ProblemSetup setup_problem(const RunConfig& config) {
  config.validate();
  ProblemSetup setup;
  if (config.unitaries || config.omega_over_pi) {
    setup.kind = ProblemSetup::Kind::Unitary;
    setup.matrices = config.unitaries ? *config.unitaries : qubit_pair_from_eigenphase(*config.omega_over_pi);
    setup.analysis = analyze_unitary_pair(setup.matrices->first, setup.matrices->second);
    const double t = setup.analysis->t;
    setup.limit = t;
    if (t <= 1e-12)
      setup.degenerate_zero = true;
    else if (t >= 1.0 - 1e-12)
      setup.degenerate_one = true;
    else
      setup.curve = make_unitary_curve(t);
  } else if (config.overlap) {
    setup.kind = ProblemSetup::Kind::PureState;
    setup.limit = *config.overlap;
    setup.curve = make_pure_state_curve(*config.overlap);
  } else {
    setup.kind = ProblemSetup::Kind::Tabulated;
    setup.curve = make_tabulated_curve(config.curve->knots, config.curve->p_bar, config.curve->invert);
  }
  return setup;
}

const TradeoffCurve& require_curve(const ProblemSetup& setup, const char* command) {
  if (!setup.curve)
    throw ValidationError(std::string(command) + ": the channel pair is degenerate (t = 0 or t = 1)");
  return *setup.curve;
}

struct BoundsRow {
  int N = 0;
  double upper = 0.0;
  double lower = 0.0;
  std::optional<double> exact;
  double upper_argmax = 0.0;
  std::string method;
};

BoundsRow bounds_row(const ProblemSetup& setup, int n, int resolution) {
  BoundsRow row;
  row.N = n;
  if (setup.degenerate_zero || setup.degenerate_one) {
    const double value = setup.degenerate_zero ? 1.0 : 0.0;
    row.upper = row.lower = value;
    row.exact = value;
    row.upper_argmax = value;  // p_bar collapses with t
    row.method = setup.degenerate_zero ? "degenerate-t0" : "degenerate-t1";
    return row;
  }
  const TradeoffCurve& curve = *setup.curve;
  const ChangePointBounds ub = upper_bound(curve, n, resolution);
  row.upper = ub.upper;
  row.upper_argmax = ub.upper_argmax;
  row.method = ub.method;
  row.lower = optimize_schedule(curve, n).lower_bound;
  if (setup.limit) row.exact = upper_bound_unitary(*setup.limit, n);
  return row;
}

int single_n(const RunConfig& config, const char* command) {
  if (config.n_range)
    throw ValidationError(std::string(command) + ": expects a single N, not an n_range");
  return config.n;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

bool log_enabled() {
  static const bool enabled = [] {
    const char* value = std::getenv("QCP_LOG");
    return value != nullptr && value[0] != '\0' && std::string(value) != "0";
  }();
  return enabled;
}

CommandResult cmd_bounds(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemSetup setup = setup_problem(config);
  const int n = single_n(config, "bounds");
  const BoundsRow row = bounds_row(setup, n, config.grid);

  if (config.format == "csv") {  // bounds defaults to json
    std::string body = "N,upper,lower,exact\n";
    body += std::to_string(row.N) + "," + format_sig(row.upper) + "," + format_sig(row.lower) + "," +
            (row.exact ? format_sig(*row.exact) : "") + "\n";
    return {0, body};
  }
  ordered_json doc;
  doc["command"] = "bounds";
  doc["N"] = row.N;
  doc["upper"] = round_sig(row.upper);
  doc["lower"] = round_sig(row.lower);
  if (row.exact) doc["exact"] = round_sig(*row.exact);
  doc["upper_argmax"] = round_sig(row.upper_argmax);
  if (setup.limit) doc["t"] = round_sig(*setup.limit);
  doc["method"] = row.method;
  doc["timings_ms"] = {{"total", round_sig(elapsed_ms(start))}};
  return {0, doc.dump(2) + "\n"};
}

CommandResult cmd_sweep(const RunConfig& config) {
  const ProblemSetup setup = setup_problem(config);
  if (!config.n_range) throw ValidationError("sweep: n_range is required");
  const auto [n_first, n_last] = *config.n_range;

  std::vector<BoundsRow> rows;
  rows.reserve(n_last - n_first + 1);
  for (int n = n_first; n <= n_last; ++n) {
    rows.push_back(bounds_row(setup, n, config.grid));
    if (log_enabled()) std::cerr << "[qcp] sweep N=" << n << " done\n";
  }

  if (config.format == "json") {  // sweep defaults to csv
    ordered_json doc = ordered_json::array();
    for (const BoundsRow& row : rows) {
      ordered_json entry;
      entry["N"] = row.N;
      entry["upper"] = round_sig(row.upper);
      entry["lower"] = round_sig(row.lower);
      if (row.exact) entry["exact"] = round_sig(*row.exact);
      doc.push_back(std::move(entry));
    }
    return {0, doc.dump(2) + "\n"};
  }
  std::string body = "N,upper,lower,exact\n";
  for (const BoundsRow& row : rows)
    body += std::to_string(row.N) + "," + format_sig(row.upper) + "," + format_sig(row.lower) + "," +
            (row.exact ? format_sig(*row.exact) : "") + "\n";
  return {0, body};
}

CommandResult cmd_certify(const RunConfig& config) {
  const ProblemSetup setup = setup_problem(config);
  if (setup.kind != ProblemSetup::Kind::Unitary)
    throw ValidationError("certify: requires a unitary problem spec (matrices or omega_over_pi)");
  if (setup.degenerate_zero || setup.degenerate_one)
    throw ValidationError("certify: the pair is degenerate (t = 0 or t = 1); no nontrivial tester exists");
  const int n = single_n(config, "certify");

  ordered_json doc;
  doc["command"] = "certify";
  doc["N"] = n;
  const double t = setup.analysis->t;
  doc["t"] = round_sig(t);
  doc["u"] = complex_pair(setup.analysis->u);

  ordered_json checks = ordered_json::array();
  bool pass = true;
  auto push_check = [&](const std::string& name, double residual, double threshold, bool ok) {
    checks.push_back(ordered_json{{"name", name},
                                  {"residual", round_sig(residual)},
                                  {"threshold", threshold},
                                  {"pass", ok}});
    if (!ok) pass = false;
  };

  try {
    const GramModel model = gram_model(t, setup.analysis->u, n);
    doc["c"] = round_sig(model.c);
    doc["branch"] = model.branch == GramBranch::Singular ? "singular" : "regular";

    const GramCertificateReport gram_report = verify_gram_certificate(model);
    for (const GramCheck& c : gram_report.checks) push_check("gram." + c.name, c.residual, c.threshold, c.pass);

    const NuConditionReport nu_report = verify_nu_condition(model);
    push_check("nu.max_quad_minus_one", std::max(0.0, nu_report.max_quad - 1.0), 1e-9,
               nu_report.max_quad <= 1.0 + 1e-9);
    push_check("nu.max_xi_residual", nu_report.max_xi_residual, 1e-8, nu_report.max_xi_residual <= 1e-8);

    TesterCertificate cert =
        construct_tester(setup.matrices->first, setup.matrices->second, n, config.d_prime.value_or(-1));
    build_povm(cert, model);
    const TesterEvaluation eval = evaluate_tester(cert);

    doc["d"] = cert.d;
    doc["d_prime"] = cert.d_prime;

    double success_residual = 0.0;
    ordered_json success = ordered_json::array(), expected = ordered_json::array(), inconclusive = ordered_json::array();
    for (int k = 0; k <= n; ++k) {
      const double want = 1.0 - t * model.c_list[k];
      success_residual = std::max(success_residual, std::abs(eval.success[k] - want));
      success.push_back(round_sig(eval.success[k]));
      expected.push_back(round_sig(want));
      inconclusive.push_back(round_sig(eval.inconclusive[k]));
    }
    const double expected_average = upper_bound_unitary(t, n);
    push_check("tester.success_vs_target", success_residual, 1e-9, success_residual <= 1e-9);
    push_check("tester.max_wrong_probability", eval.max_wrong, 1e-9, eval.max_wrong <= 1e-9);
    push_check("tester.average_vs_closed_form", std::abs(eval.average - expected_average), 1e-9,
               std::abs(eval.average - expected_average) <= 1e-9);
    for (const auto& [name, value] : cert.residuals) {
      const double threshold = 1e-9;
      push_check("construction." + name, value, threshold, value <= threshold);
    }

    doc["success"] = std::move(success);
    doc["expected_success"] = std::move(expected);
    doc["inconclusive"] = std::move(inconclusive);
    doc["average"] = round_sig(eval.average);
    doc["expected_average"] = round_sig(expected_average);
    doc["max_wrong"] = round_sig(eval.max_wrong);

    ordered_json matrices;
    matrices["probe"] = vector_pairs(cert.probe);
    ordered_json interleaved = ordered_json::array();
    for (const ComplexMatrix& m : cert.interleaved) interleaved.push_back(matrix_rows(m));
    matrices["interleaved"] = std::move(interleaved);
    ordered_json povm = ordered_json::array();
    for (const ComplexMatrix& m : cert.povm) povm.push_back(matrix_rows(m));
    matrices["povm"] = std::move(povm);
    doc["matrices"] = std::move(matrices);
  } catch (const VerificationError& e) {
    doc["error"] = e.what();
    doc["checks"] = std::move(checks);
    doc["pass"] = false;
    return {2, doc.dump(2) + "\n"};
  }

  doc["checks"] = std::move(checks);
  doc["pass"] = pass;
  return {pass ? 0 : 2, doc.dump(2) + "\n"};
}

CommandResult cmd_simulate(const RunConfig& config) {
  const ProblemSetup setup = setup_problem(config);
  const TradeoffCurve& curve = require_curve(setup, "simulate");
  const int n = single_n(config, "simulate");
  if (config.trials < 1000) throw ValidationError("simulate: trials must be >= 1000");
  if (!config.seed) throw ValidationError("simulate: a seed is required for reproducible runs");

  const AdaptiveSchedule schedule = optimize_schedule(curve, n);
  const ForwardCheck fc = forward_check(schedule, curve);

  ordered_json doc;
  doc["command"] = "simulate";
  doc["N"] = n;
  doc["trials"] = config.trials;
  doc["seed"] = *config.seed;
  doc["lower_bound"] = round_sig(schedule.lower_bound);

  bool pass = true;
  ordered_json rows = ordered_json::array();
  for (int k = 0; k <= n; ++k) {
    const double analytic = fc.success[k];
    const double empirical =
        simulate_schedule(schedule, curve, k, config.trials, SplitMix64::mix(*config.seed, static_cast<std::uint64_t>(k)));
    const double sigma = std::sqrt(std::max(analytic * (1.0 - analytic), 0.0) / config.trials);
    const bool flagged = sigma > 0.0 ? std::abs(empirical - analytic) > 4.0 * sigma : empirical != analytic;
    if (flagged) pass = false;
    rows.push_back(ordered_json{{"k", k},
                                {"analytic", round_sig(analytic)},
                                {"empirical", round_sig(empirical)},
                                {"sigma", round_sig(sigma)},
                                {"flagged", flagged}});
  }
  doc["per_k"] = std::move(rows);
  doc["pass"] = pass;
  return {pass ? 0 : 2, doc.dump(2) + "\n"};
}

}  // namespace qcp
