#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcp/cli_runner.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string format;
  std::string out;
  int grid = 0;
  long trials = 0;
  long long seed = -1;
  int n = 0;
  std::string n_range;
};

void add_common_flags(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Path to a JSON run configuration")->required();
  cmd->add_option("--format", opts.format, "Output format: json or csv");
  cmd->add_option("--out", opts.out, "Write the result document to this path instead of stdout");
  cmd->add_option("--grid", opts.grid, "Search resolution for the upper bound");
  cmd->add_option("--trials", opts.trials, "Monte Carlo trials per change point");
  cmd->add_option("--seed", opts.seed, "Base RNG seed");
  cmd->add_option("--n", opts.n, "Sequence length N");
  cmd->add_option("--n-range", opts.n_range, "Sweep range A:B");
}

qcp::RunConfig merge(const CliOptions& opts) {
  qcp::RunConfig config = qcp::load_config_file(opts.config_path);
  if (!opts.format.empty()) config.format = opts.format;
  if (!opts.out.empty()) config.out = opts.out;
  if (opts.grid > 0) config.grid = opts.grid;
  if (opts.trials > 0) config.trials = opts.trials;
  if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.n > 0) {
    config.n = opts.n;
    config.n_range.reset();
  }
  if (!opts.n_range.empty()) {
    const auto colon = opts.n_range.find(':');
    if (colon == std::string::npos) throw qcp::ValidationError("--n-range expects the form A:B");
    config.n_range = std::make_pair(std::stoi(opts.n_range.substr(0, colon)),
                                    std::stoi(opts.n_range.substr(colon + 1)));
  }
  return config;
}

int emit(const qcp::CommandResult& result, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << result.body;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "qcp: cannot open output path " << out_path << "\n";
      return 1;
    }
    out << result.body;
  }
  return result.exit_code;
}

int emit_error(const std::string& kind, const std::string& message, const std::string& out_path, int code) {
  nlohmann::ordered_json doc;
  doc["error"] = message;
  doc["type"] = kind;
  std::cerr << "qcp: " << message << "\n";
  emit({code, doc.dump(2) + "\n"}, out_path);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Change-point discrimination bounds, certificates, and simulations"};
  app.require_subcommand(1);

  CliOptions opts;
  CLI::App* bounds = app.add_subcommand("bounds", "Upper/lower/exact values for one N");
  CLI::App* sweep = app.add_subcommand("sweep", "Bounds for a range of N (CSV)");
  CLI::App* certify = app.add_subcommand("certify", "Build and verify the optimal unitary tester");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo check of the adaptive strategy");
  for (CLI::App* cmd : {bounds, sweep, certify, simulate}) add_common_flags(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  std::string out_path;
  try {
    const qcp::RunConfig config = merge(opts);
    out_path = config.out;
    const auto start = std::chrono::steady_clock::now();
    qcp::CommandResult result;
    if (bounds->parsed())
      result = qcp::cmd_bounds(config);
    else if (sweep->parsed())
      result = qcp::cmd_sweep(config);
    else if (certify->parsed())
      result = qcp::cmd_certify(config);
    else
      result = qcp::cmd_simulate(config);
    if (qcp::log_enabled()) {
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cerr << "qcp: finished in " << ms << " ms\n";
    }
    return emit(result, out_path);
  } catch (const qcp::ValidationError& e) {
    return emit_error("validation", e.what(), out_path, 1);
  } catch (const qcp::VerificationError& e) {
    return emit_error("verification", e.what(), out_path, 2);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), out_path, 1);
  }
}
