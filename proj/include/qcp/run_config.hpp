#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcp/complex_matrix.hpp"

namespace qcp {

// One problem specification per run: explicit unitary matrices, the qubit
// eigenphase shorthand, a pure-state overlap, or a tabulated tradeoff curve.
struct TabulatedSpec {
  std::vector<std::pair<double, double>> knots;
  double p_bar = 1.0;
  bool invert = false;
};

struct RunConfig {
  std::optional<std::pair<ComplexMatrix, ComplexMatrix>> unitaries;
  std::optional<double> omega_over_pi;  // pair (I, diag(1, e^{i pi x}))
  std::optional<double> overlap;        // pure-state overlap s
  std::optional<TabulatedSpec> curve;

  int n = 1;
  std::optional<std::pair<int, int>> n_range;

  int grid = 10000;     // coarse resolution for the upper-bound search
  long trials = 100000;
  std::optional<std::uint64_t> seed;
  std::optional<int> d_prime;

  std::string format;  // "json" or "csv"; empty = command default
  std::string out;              // empty = stdout

  void validate() const;
  int problem_count() const;
};

// Config documents are JSON; matrices are arrays of rows of [re, im] pairs.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace qcp
