#include "qcp/run_config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qcp {

namespace {

using nlohmann::ordered_json;

ComplexMatrix matrix_from_json(const ordered_json& rows, const std::string& name) {
  if (!rows.is_array() || rows.empty()) throw ValidationError("config: " + name + " must be an array of rows");
  std::vector<std::vector<cxd>> data;
  for (const auto& row : rows) {
    std::vector<cxd> r;
    for (const auto& entry : row) {
      if (!entry.is_array() || entry.size() != 2)
        throw ValidationError("config: " + name + " entries must be [re, im] pairs");
      r.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    data.push_back(std::move(r));
  }
  return ComplexMatrix::from_rows(data);
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int RunConfig::problem_count() const {
  return static_cast<int>(unitaries.has_value()) + static_cast<int>(omega_over_pi.has_value()) +
         static_cast<int>(overlap.has_value()) + static_cast<int>(curve.has_value());
}

void RunConfig::validate() const {
  if (problem_count() != 1)
    throw ValidationError("config: exactly one problem entry (unitaries | omega_over_pi | overlap | curve) required");
  if (n_range) {
    if (n_range->first < 1 || n_range->second < n_range->first)
      throw ValidationError("config: n_range must satisfy 1 <= first <= last");
  } else if (n < 1) {
    throw ValidationError("config: n must be >= 1");
  }
  if (grid < 101) throw ValidationError("config: grid must be >= 101");
  if (!format.empty() && format != "json" && format != "csv")
    throw ValidationError("config: format must be 'json' or 'csv'");
  if (overlap && !(*overlap > 0.0 && *overlap < 1.0))
    throw ValidationError("config: overlap must lie strictly inside (0, 1)");
}

RunConfig parse_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }

  RunConfig config;
  const ordered_json problem = doc.contains("problem") ? doc.at("problem") : ordered_json::object();
  if (problem.contains("unitaries")) {
    const auto& u = problem.at("unitaries");
    config.unitaries = std::make_pair(matrix_from_json(u.at("u0"), "u0"), matrix_from_json(u.at("u1"), "u1"));
  }
  if (problem.contains("omega_over_pi")) config.omega_over_pi = problem.at("omega_over_pi").get<double>();
  if (problem.contains("overlap")) config.overlap = problem.at("overlap").get<double>();
  if (problem.contains("curve")) {
    const auto& c = problem.at("curve");
    TabulatedSpec spec;
    for (const auto& knot : c.at("knots")) {
      if (!knot.is_array() || knot.size() != 2) throw ValidationError("config: curve knots must be [p, f] pairs");
      spec.knots.emplace_back(knot[0].get<double>(), knot[1].get<double>());
    }
    spec.p_bar = c.value("p_bar", spec.knots.empty() ? 1.0 : spec.knots.back().first);
    spec.invert = c.value("invert", false);
    config.curve = std::move(spec);
  }

  if (doc.contains("n")) config.n = doc.at("n").get<int>();
  if (doc.contains("n_range")) {
    const auto& r = doc.at("n_range");
    if (!r.is_array() || r.size() != 2) throw ValidationError("config: n_range must be [first, last]");
    config.n_range = std::make_pair(r[0].get<int>(), r[1].get<int>());
  }
  if (doc.contains("grid")) config.grid = doc.at("grid").get<int>();
  if (doc.contains("trials")) config.trials = doc.at("trials").get<long>();
  if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("d_prime")) config.d_prime = doc.at("d_prime").get<int>();
  if (doc.contains("format")) config.format = doc.at("format").get<std::string>();
  if (doc.contains("out")) config.out = doc.at("out").get<std::string>();
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  ordered_json doc;
  ordered_json problem = ordered_json::object();
  if (config.unitaries)
    problem["unitaries"] = {{"u0", matrix_to_json(config.unitaries->first)},
                            {"u1", matrix_to_json(config.unitaries->second)}};
  if (config.omega_over_pi) problem["omega_over_pi"] = *config.omega_over_pi;
  if (config.overlap) problem["overlap"] = *config.overlap;
  if (config.curve) {
    ordered_json knots = ordered_json::array();
    for (const auto& [p, f] : config.curve->knots) knots.push_back({p, f});
    problem["curve"] = {{"knots", std::move(knots)}, {"p_bar", config.curve->p_bar}, {"invert", config.curve->invert}};
  }
  doc["problem"] = std::move(problem);
  if (config.n_range)
    doc["n_range"] = {config.n_range->first, config.n_range->second};
  else
    doc["n"] = config.n;
  doc["grid"] = config.grid;
  doc["trials"] = config.trials;
  if (config.seed) doc["seed"] = *config.seed;
  if (config.d_prime) doc["d_prime"] = *config.d_prime;
  if (!config.format.empty()) doc["format"] = config.format;
  if (!config.out.empty()) doc["out"] = config.out;
  return doc.dump(2);
}

}  // namespace qcp
