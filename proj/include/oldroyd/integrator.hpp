#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oldroyd/model.hpp"

namespace oldroyd {

enum class Scheme { if_rk4, if_ssprk3 };

const char* to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::if_rk4;
  double t_end = 1.0;
  double cfl_safety = 0.5;
  bool adapt = false;
  // Upper bound for adaptive steps.
  double dt_max = 0.1;
  // Blow-up is declared once the H^1 norm exceeds this multiple of its
  // initial value.
  double blowup_factor = 1e8;

  void validate() const;
  bool operator==(const StepperConfig&) const = default;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, State last_state)
      : std::runtime_error(what), last_state_(std::move(last_state)) {}
  // Last state whose fields were all finite and below the norm ceiling.
  const State& last_state() const { return last_state_; }
  double time() const { return last_state_.t; }

 private:
  State last_state_;
};

// One step of size h. The linear parts exp(-nu|k|^2 h) on u and
// exp(-(a + mu|k|^2) h) on tau are applied exactly; the remainder is advanced
// by the Lawson form of the chosen Runge-Kutta scheme. The result is spectral
// and u is re-projected. Throws BlowUpError (carrying the input state) when a
// non-finite value appears.
State step(const State& s, const ModelParams& params, Scheme scheme, double h);
inline State step(const State& s, const ModelParams& params, const StepperConfig& cfg) {
  return step(s, params, cfg.scheme, cfg.dt);
}

// min(cfl_safety dx / (max|u| + 1e-12), dt_max, 2 previous_dt); the last bound
// applies only when previous_dt > 0.
double cfl_dt(const State& s, const StepperConfig& cfg, double previous_dt = 0.0);

struct RunHooks {
  // Record interval; 0 records after every step. The initial and final states
  // are always recorded.
  double cadence = 0.0;
  // Each requested time fires once, at the first completed step within half a
  // step of it (or the final state if the run ends first).
  std::vector<double> snapshot_times;
  std::function<void(const State&)> on_record;
  std::function<void(const State&, double requested_time)> on_snapshot;
  // Optional per-step hook, e.g. to hold fields fixed in tests.
  std::function<void(State&)> after_step;
};

struct RunResult {
  State final_state;
  long steps = 0;
};

// Integrates from initial.t to cfg.t_end. With fixed steps the time after k
// steps is initial.t + k dt and the last step is shortened to land on t_end.
RunResult run(const State& initial, const ModelParams& params, const StepperConfig& cfg,
              const RunHooks& hooks = {});

}  // namespace oldroyd
