#pragma once

#include <string>

#include "qcp/run_config.hpp"

namespace qcp {

struct CommandResult {
  int exit_code = 0;
  std::string body;  // JSON or CSV document
};

// Single-N record: upper/lower bounds, the exact value when the pair admits
// one, the maximizing probability, and timings.
CommandResult cmd_bounds(const RunConfig& config);
// One row per N in n_range; CSV columns N,upper,lower,exact by default.
CommandResult cmd_sweep(const RunConfig& config);
// Full certificate pipeline for a unitary problem: Gram model, closed-form
// checks, tester construction, POVM, and measured probabilities.
// Exit code 2 when any verification check fails.
CommandResult cmd_certify(const RunConfig& config);
// Monte Carlo of the adaptive schedule for every change point; flags any
// empirical rate outside 4 binomial standard deviations (exit code 2).
CommandResult cmd_simulate(const RunConfig& config);

// True when the QCP_LOG environment variable asks for verbose progress.
bool log_enabled();

}  // namespace qcp
