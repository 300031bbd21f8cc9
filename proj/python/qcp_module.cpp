#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcp/adaptive.hpp"
#include "qcp/bounds.hpp"
#include "qcp/cli_runner.hpp"
#include "qcp/gram_model.hpp"
#include "qcp/polygon.hpp"
#include "qcp/run_config.hpp"
#include "qcp/tester.hpp"
#include "qcp/tradeoff_curve.hpp"
#include "qcp/unitary_pair.hpp"

namespace py = pybind11;
using namespace qcp;

namespace {

using PyMatrix = std::vector<std::vector<cxd>>;

ComplexMatrix to_matrix(const PyMatrix& rows) { return ComplexMatrix::from_rows(rows); }

PyMatrix from_matrix(const ComplexMatrix& m) {
  PyMatrix rows(m.rows(), std::vector<cxd>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

py::dict bounds_to_dict(const ChangePointBounds& b) {
  py::dict d;
  d["N"] = b.N;
  d["upper"] = b.upper;
  d["upper_argmax"] = b.upper_argmax;
  if (b.lower) d["lower"] = *b.lower;
  if (b.exact) d["exact"] = *b.exact;
  d["method"] = b.method;
  return d;
}

py::dict analysis_to_dict(const UnitaryPairAnalysis& a) {
  py::dict d;
  d["dim"] = a.dim;
  d["eigenvalues"] = a.eigenvalues;
  d["t"] = a.t;
  d["lambda0"] = a.lambda0;
  d["lambda1"] = a.lambda1;
  d["edge"] = a.edge;
  d["ket_plus"] = a.ket_plus;
  d["omega"] = a.omega;
  if (a.u_defined) d["u"] = a.u;
  d["u_defined"] = a.u_defined;
  return d;
}

py::dict evaluation_to_dict(const TesterEvaluation& e) {
  py::dict d;
  d["success"] = e.success;
  d["outcome"] = e.outcome;
  d["inconclusive"] = e.inconclusive;
  d["average"] = e.average;
  d["max_wrong"] = e.max_wrong;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bounds, adaptive strategies, and optimal testers for identifying the change "
            "point in a sequence of quantum channels.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

  py::class_<TradeoffCurve>(m, "TradeoffCurve")
      .def_property_readonly("p_bar", &TradeoffCurve::p_bar)
      .def_property_readonly("involution", &TradeoffCurve::involution)
      .def_property_readonly("parameter", &TradeoffCurve::parameter)
      .def("eval", &TradeoffCurve::eval, py::arg("p"))
      .def("eval_iterated", &TradeoffCurve::eval_iterated, py::arg("p"), py::arg("i"))
      .def("validate", [](const TradeoffCurve& curve) {
        const CurveReport report = curve.validate();
        py::dict d;
        d["nonincreasing"] = report.nonincreasing;
        d["concave"] = report.concave;
        d["in_range"] = report.in_range;
        d["involutive"] = report.involutive;
        d["max_involution_residual"] = report.max_involution_residual;
        d["notes"] = report.notes;
        d["passed"] = report.passed();
        return d;
      });

  m.def("make_unitary_curve", &make_unitary_curve, py::arg("t"));
  m.def("make_pure_state_curve", &make_pure_state_curve, py::arg("s"));
  m.def("make_tabulated_curve", &make_tabulated_curve, py::arg("knots"), py::arg("p_bar"),
        py::arg("invert") = false);

  m.def("distance_to_polygon", [](const std::vector<cxd>& points) {
    const PolygonResult result = distance_to_polygon(points);
    py::dict d;
    d["t"] = result.t;
    d["edge"] = result.edge;
    d["origin_inside"] = result.origin_inside;
    return d;
  });

  m.def("analyze_unitary_pair", [](const PyMatrix& u0, const PyMatrix& u1) {
    return analysis_to_dict(analyze_unitary_pair(to_matrix(u0), to_matrix(u1)));
  });

  m.def("xi", &xi, py::arg("n"));
  m.def("upper_bound_unitary", &upper_bound_unitary, py::arg("t"), py::arg("n"));
  m.def(
      "upper_bound",
      [](const TradeoffCurve& curve, int n, int resolution) {
        return bounds_to_dict(upper_bound(curve, n, resolution));
      },
      py::arg("curve"), py::arg("n"), py::arg("resolution") = 10000);
  m.def("dp_oracle", &dp_oracle, py::arg("curve"), py::arg("n"), py::arg("grid_size") = 100000);
  m.def(
      "maximizer_diagnostics",
      [](const TradeoffCurve& curve, int n, int resolution) {
        const MaximizerDiagnostics diag = maximizer_diagnostics(curve, n, resolution);
        py::dict d;
        d["r"] = diag.r;
        d["t_n"] = diag.t_n;
        d["grid_tolerance"] = diag.grid_tolerance;
        d["all_pass"] = diag.all_pass;
        d["flags"] = diag.flags;
        py::list checks;
        for (const MaximizerCheck& check : diag.checks) {
          py::dict c;
          c["name"] = check.name;
          c["n"] = check.n;
          c["lhs"] = check.lhs;
          c["rhs"] = check.rhs;
          c["pass"] = check.pass;
          checks.append(c);
        }
        d["checks"] = checks;
        return d;
      },
      py::arg("curve"), py::arg("n"), py::arg("resolution") = 10000);
  m.def(
      "oscillation_check",
      [](const TradeoffCurve& curve, int n_max) {
        const OscillationReport report = oscillation_check(curve, n_max);
        py::dict d;
        d["upper"] = report.upper;
        d["odd_constant"] = report.odd_constant;
        d["even_nonincreasing"] = report.even_nonincreasing;
        d["prior_sweep_nondecreasing"] = report.prior_sweep_nondecreasing;
        d["max_odd_spread"] = report.max_odd_spread;
        d["pass"] = report.pass;
        return d;
      },
      py::arg("curve"), py::arg("n_max"));

  py::class_<AdaptiveSchedule>(m, "AdaptiveSchedule")
      .def_readonly("N", &AdaptiveSchedule::N)
      .def_readonly("p", &AdaptiveSchedule::p)
      .def_readonly("q", &AdaptiveSchedule::q)
      .def_readonly("A", &AdaptiveSchedule::A)
      .def_readonly("B", &AdaptiveSchedule::B)
      .def_readonly("lower_bound", &AdaptiveSchedule::lower_bound);

  m.def("optimize_schedule", &optimize_schedule, py::arg("curve"), py::arg("n"));
  m.def(
      "forward_check",
      [](const AdaptiveSchedule& schedule, const TradeoffCurve& curve) {
        const ForwardCheck fc = forward_check(schedule, curve);
        py::dict d;
        d["S"] = fc.S;
        d["T"] = fc.T;
        d["success"] = fc.success;
        d["average"] = fc.average;
        d["backward_residual"] = fc.backward_residual;
        return d;
      },
      py::arg("schedule"), py::arg("curve"));
  m.def("simulate_schedule", &simulate_schedule, py::arg("schedule"), py::arg("curve"), py::arg("k"),
        py::arg("trials"), py::arg("seed"));

  py::class_<GramModel>(m, "GramModel")
      .def_readonly("N", &GramModel::N)
      .def_readonly("t", &GramModel::t)
      .def_readonly("u", &GramModel::u)
      .def_readonly("c", &GramModel::c)
      .def_readonly("c_list", &GramModel::c_list)
      .def_readonly("m", &GramModel::m)
      .def_property_readonly("branch",
                             [](const GramModel& model) {
                               return model.branch == GramBranch::Singular ? "singular" : "regular";
                             })
      .def_property_readonly("a", [](const GramModel& model) {
        return std::vector<double>(model.a.begin(), model.a.end());
      })
      .def_property_readonly("G", [](const GramModel& model) { return from_matrix(model.G); })
      .def_property_readonly("Xi", [](const GramModel& model) { return from_matrix(model.Xi); })
      .def_readonly("mu", &GramModel::mu);

  m.def("gram_model", &gram_model, py::arg("t"), py::arg("u"), py::arg("n"));
  m.def("verify_gram_certificate", [](const GramModel& model) {
    const GramCertificateReport report = verify_gram_certificate(model);
    py::list checks;
    for (const GramCheck& check : report.checks) {
      py::dict c;
      c["name"] = check.name;
      c["residual"] = check.residual;
      c["threshold"] = check.threshold;
      c["pass"] = check.pass;
      checks.append(c);
    }
    py::dict d;
    d["checks"] = checks;
    d["pass"] = report.pass;
    return d;
  });
  m.def("verify_nu_condition", [](const GramModel& model) {
    const NuConditionReport report = verify_nu_condition(model);
    py::dict d;
    d["max_xi_residual"] = report.max_xi_residual;
    d["max_quad"] = report.max_quad;
    d["pass"] = report.pass;
    py::list steps;
    for (const NuStep& step : report.steps) {
      py::dict s;
      s["n"] = step.n;
      s["xi_residual"] = step.xi_residual;
      s["quad"] = step.quad;
      s["closed_form_gap"] = step.closed_form_gap;
      steps.append(s);
    }
    d["steps"] = steps;
    return d;
  });

  py::class_<TesterCertificate>(m, "TesterCertificate")
      .def_readonly("N", &TesterCertificate::N)
      .def_readonly("d", &TesterCertificate::d)
      .def_readonly("d_prime", &TesterCertificate::d_prime)
      .def_readonly("t", &TesterCertificate::t)
      .def_readonly("u", &TesterCertificate::u)
      .def_readonly("probe", &TesterCertificate::probe)
      .def_readonly("x", &TesterCertificate::x)
      .def_readonly("residuals", &TesterCertificate::residuals)
      .def_property_readonly("interleaved",
                             [](const TesterCertificate& cert) {
                               std::vector<PyMatrix> out;
                               for (const ComplexMatrix& m2 : cert.interleaved) out.push_back(from_matrix(m2));
                               return out;
                             })
      .def_property_readonly("povm",
                             [](const TesterCertificate& cert) {
                               std::vector<PyMatrix> out;
                               for (const ComplexMatrix& m2 : cert.povm) out.push_back(from_matrix(m2));
                               return out;
                             })
      .def_property_readonly("gram_final",
                             [](const TesterCertificate& cert) { return from_matrix(cert.gram_final); })
      .def_property_readonly("final_states", [](const TesterCertificate& cert) { return cert.final_states(); });

  m.def(
      "construct_tester",
      [](const PyMatrix& u0, const PyMatrix& u1, int n, int d_prime) {
        return construct_tester(to_matrix(u0), to_matrix(u1), n, d_prime);
      },
      py::arg("u0"), py::arg("u1"), py::arg("n"), py::arg("d_prime") = -1);
  m.def("build_povm", [](TesterCertificate& cert, const GramModel& model) -> TesterCertificate& {
    return build_povm(cert, model);
  }, py::arg("cert"), py::arg("model"), py::return_value_policy::reference);
  m.def("evaluate_tester", [](const TesterCertificate& cert) { return evaluation_to_dict(evaluate_tester(cert)); });

  // Convenience: the full certificate pipeline in one call.
  m.def(
      "certify_unitary",
      [](const PyMatrix& u0, const PyMatrix& u1, int n, int d_prime) {
        TesterCertificate cert = construct_tester(to_matrix(u0), to_matrix(u1), n, d_prime);
        const GramModel model = gram_model(cert.t, cert.u, n);
        build_povm(cert, model);
        const TesterEvaluation eval = evaluate_tester(cert);
        py::dict d = evaluation_to_dict(eval);
        d["t"] = cert.t;
        d["expected_average"] = upper_bound_unitary(cert.t, n);
        d["residuals"] = cert.residuals;
        return d;
      },
      py::arg("u0"), py::arg("u1"), py::arg("n"), py::arg("d_prime") = -1);

  // CLI-equivalent entry points on JSON config text.
  auto wrap_command = [](CommandResult (*command)(const RunConfig&)) {
    return [command](const std::string& config_json) {
      const CommandResult result = command(parse_config(config_json));
      return py::make_tuple(result.exit_code, result.body);
    };
  };
  m.def("run_bounds", wrap_command(&cmd_bounds), py::arg("config_json"));
  m.def("run_sweep", wrap_command(&cmd_sweep), py::arg("config_json"));
  m.def("run_certify", wrap_command(&cmd_certify), py::arg("config_json"));
  m.def("run_simulate", wrap_command(&cmd_simulate), py::arg("config_json"));
}
