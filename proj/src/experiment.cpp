#include "oldroyd/experiment.hpp"

#include <fstream>

#include "oldroyd/generators.hpp"
#include "oldroyd/integrator.hpp"
#include "oldroyd/snapshot.hpp"

namespace oldroyd {

ExperimentResult run_experiment(const RunConfig& cfg) {
  cfg.validate();
  const std::filesystem::path dir = cfg.outputs.directory;
  std::filesystem::create_directories(dir);
  {
    std::ofstream echo(dir / "config.echo");
    echo << echo_config(cfg);
  }

  const State initial = generate_initial(cfg.initial, cfg.grid, cfg.outputs.seed);
  DiagnosticsTracker tracker(cfg.grid, cfg.model, cfg.diagnostics);

  std::ofstream csv;
  if (cfg.outputs.csv) {
    csv.open(dir / "diagnostics.csv");
    write_csv_header(csv);
  }
  int snapshot_index = 0;

  RunHooks hooks;
  hooks.cadence = cfg.cadence;
  hooks.snapshot_times = cfg.outputs.snapshot_times;
  hooks.on_record = [&](const State& s) {
    const DiagnosticsRecord& r = tracker.add(s);
    if (csv.is_open()) {
      write_csv_row(csv, r);
      csv.flush();
    }
  };
  hooks.on_snapshot = [&](const State& s, double) {
    Snapshot snap;
    snap.grid = cfg.grid;
    snap.t = s.t;
    snap.names = {"u1", "u2", "t11", "t12", "t22"};
    snap.components = {s.u.u1, s.u.u2, s.tau.t11, s.tau.t12, s.tau.t22};
    write_snapshot(dir / ("snapshot_" + std::to_string(snapshot_index++) + ".bin"), snap,
                   cfg.outputs.snapshot_representation);
  };

  ExperimentResult result;
  bool blew_up = false;
  double blowup_time = 0.0;
  try {
    run(initial, cfg.model, cfg.stepper, hooks);
  } catch (const BlowUpError& e) {
    blew_up = true;
    blowup_time = e.time();
  }

  result.history = tracker.history();
  result.report = summarize(result.history, cfg.checks);
  if (blew_up) {
    result.report.status = "blowup";
    result.report.blowup_time = blowup_time;
  }
  {
    std::ofstream txt(dir / "summary.txt");
    write_report_text(txt, result.report);
    std::ofstream kv(dir / "summary.kv");
    write_report_kv(kv, result.report);
  }
  if (blew_up) {
    result.exit_code = kExitBlowUp;
  } else if (result.report.failed()) {
    result.exit_code = kExitCheckFailure;
  }
  return result;
}

}  // namespace oldroyd
