#pragma once

#include <filesystem>

#include "oldroyd/config.hpp"
#include "oldroyd/summary.hpp"

namespace oldroyd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitCheckFailure = 4;

struct ExperimentResult {
  int exit_code = kExitOk;
  Report report;
  History history;
};

// Runs one configured experiment and writes into cfg.outputs.directory:
//   config.echo       the effective configuration (re-parses to cfg)
//   diagnostics.csv   one row per record (when outputs.csv is on)
//   snapshot_<k>.bin  fields u1, u2, t11, t12, t22 at each snapshot time
//   summary.txt       human-readable report
//   summary.kv        key = value report
// Blow-up ends the run early with partial artifacts and exit code 3.
ExperimentResult run_experiment(const RunConfig& cfg);

}  // namespace oldroyd
