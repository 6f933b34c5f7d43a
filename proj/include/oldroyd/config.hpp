#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "oldroyd/diagnostics.hpp"
#include "oldroyd/generators.hpp"
#include "oldroyd/grid.hpp"
#include "oldroyd/integrator.hpp"
#include "oldroyd/model.hpp"

namespace oldroyd {

struct OutputsConfig {
  std::filesystem::path directory = "out";
  bool csv = true;
  std::vector<double> snapshot_times;
  Representation snapshot_representation = Representation::real;
  std::uint64_t seed = 1;

  bool operator==(const OutputsConfig&) const = default;
};

// Tolerances of the summary checks. A check runs only when it applies to the
// model mode; the fits run only when a window is configured.
struct ChecksConfig {
  double tau_identity = 1e-5;
  double tau_lp_decay = 1e-4;
  double velocity_energy = 1e-5;
  double e_eta_increment = 1e-8;
  std::vector<double> fit_window;  // empty or {t0, t1}
  std::vector<double> l2_exponent{-0.65, -0.35};
  std::vector<double> grad_exponent{-1.3, -0.7};
  double min_r2 = 0.95;

  bool operator==(const ChecksConfig&) const = default;
};

struct RunConfig {
  GridSpec grid;
  ModelParams model;
  StepperConfig stepper;
  std::vector<GeneratorSpec> initial;
  DiagnosticsConfig diagnostics;
  double cadence = 0.0;  // 0 records every step
  OutputsConfig outputs;
  ChecksConfig checks;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

struct ConfigKeyInfo {
  std::string key;
  std::string default_value;  // empty for required keys
  std::string description;
  bool required = false;
};

// Every fixed key with its default and meaning. Generator parameters
// (initial.<generator>.<param>) are listed per generator after these.
const std::vector<ConfigKeyInfo>& config_reference();

// Text format: one "key = value" per line, '#' starts a comment, lists are
// comma separated and "inf" denotes infinity. Unknown keys, duplicate keys,
// malformed values and missing required keys raise ParseError naming the key.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

// Lossless echo: every key with its effective value, in reference order.
std::string echo_config(const RunConfig& cfg);

// Closest string by edit distance, for error messages.
std::string nearest_key(const std::string& key, const std::vector<std::string>& candidates);

}  // namespace oldroyd
