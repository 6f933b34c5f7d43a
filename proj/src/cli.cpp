#include "oldroyd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "oldroyd/config.hpp"
#include "oldroyd/errors.hpp"
#include "oldroyd/experiment.hpp"
#include "oldroyd/linear_analysis.hpp"
#include "oldroyd/littlewood_paley.hpp"
#include "oldroyd/snapshot.hpp"
#include "oldroyd/summary.hpp"

namespace oldroyd {
namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_exponent(const std::string& text) {
  if (text == "inf") return kInfinity;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw ConfigError("bad number '" + text + "'");
  return v;
}

struct BesovTriple {
  double s, p, r;
};

BesovTriple parse_triple(const std::string& text) {
  std::stringstream ss(text);
  std::vector<std::string> parts;
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("--besov expects s,p,r, got '" + text + "'");
  try {
    return {parse_exponent(parts[0]), parse_exponent(parts[1]), parse_exponent(parts[2])};
  } catch (const std::invalid_argument&) {
    throw ConfigError("--besov expects numbers, got '" + text + "'");
  }
}

int cmd_run(const std::string& path, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(path);
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const ExperimentResult res = run_experiment(cfg);
  write_report_text(out, res.report);
  return res.exit_code;
}

int cmd_norms(const std::string& path, const std::vector<std::string>& triples,
              const std::string& homogeneous, const std::string& component, std::ostream& out) {
  const Snapshot snap = read_snapshot(path);
  const lp::DyadicPartition part(snap.grid);
  std::vector<const ScalarField*> comps;
  std::vector<double> weights;
  for (std::size_t i = 0; i < snap.names.size(); ++i) {
    if (component != "all" && snap.names[i] != component) continue;
    comps.push_back(&snap.components[i]);
    weights.push_back(snap.names[i] == "t12" ? 2.0 : 1.0);
  }
  if (comps.empty()) throw ConfigError("snapshot has no component named '" + component + "'");
  std::vector<bool> modes;
  if (homogeneous == "no" || homogeneous == "both") modes.push_back(false);
  if (homogeneous == "yes" || homogeneous == "both") modes.push_back(true);
  if (modes.empty()) throw ConfigError("--homogeneous expects yes, no or both");
  out << "s,p,r,homogeneous,value\n";
  for (const std::string& t : triples) {
    const BesovTriple b = parse_triple(t);
    if (!(b.p >= 1.0) || !(b.r >= 1.0)) throw ConfigError("p and r must lie in [1, inf]");
    for (bool h : modes) {
      const double v = lp::besov_norm(part, comps, weights, b.s, b.p, b.r, h);
      out << num(b.s) << ',' << num(b.p) << ',' << num(b.r) << ',' << (h ? 1 : 0) << ','
          << num(v) << '\n';
    }
  }
  return kExitOk;
}

int cmd_dispersion(double kmax, double dk, const linear::LinearParams& p, std::ostream& out) {
  if (!(kmax > 0.0)) throw ConfigError("--kmax must be positive");
  if (!(dk > 0.0)) throw ConfigError("--dk must be positive");
  out << "k,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus\n";
  for (const linear::DispersionRow& r : linear::dispersion_table(kmax, dk, p)) {
    out << num(r.k) << ',' << num(r.lambda_plus.real()) << ',' << num(r.lambda_plus.imag()) << ','
        << num(r.lambda_minus.real()) << ',' << num(r.lambda_minus.imag()) << '\n';
  }
  return kExitOk;
}

int cmd_summarize(const std::string& csv, const std::string& config, std::ostream& out,
                  std::ostream& err) {
  RunConfig cfg;
  if (!config.empty()) {
    try {
      cfg = parse_config(config);
    } catch (const ParseError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfigError;
    }
  }
  const CsvTable table = read_csv(csv);
  const Report report = summarize_csv(table, cfg.checks, cfg.model);
  write_report_kv(out, report);
  out << '\n';
  write_report_text(out, report);
  return report.failed() ? kExitCheckFailure : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-spectral solver and diagnostics for 2-D Oldroyd-B models"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
  run_cmd->add_option("config", run_config, "config file")->required();

  std::string snapshot, homogeneous = "both", component = "all";
  std::vector<std::string> triples;
  auto* norms_cmd = app.add_subcommand("norms", "Besov norms of a field snapshot as CSV");
  norms_cmd->add_option("snapshot", snapshot, "snapshot file")->required();
  norms_cmd->add_option("--besov", triples, "s,p,r triple (p, r may be inf); repeatable")->required();
  norms_cmd->add_option("--homogeneous", homogeneous, "yes, no or both");
  norms_cmd->add_option("--component", component, "component name or all");

  double kmax = 0.0, dk = 1.0;
  linear::LinearParams lin;
  auto* disp_cmd = app.add_subcommand("dispersion", "per-mode eigenvalues of the linearized system");
  disp_cmd->add_option("--kmax", kmax, "largest wavenumber")->required();
  disp_cmd->add_option("--dk", dk, "wavenumber spacing");
  disp_cmd->add_option("--alpha", lin.alpha, "coupling alpha");
  disp_cmd->add_option("--mu", lin.mu, "stress diffusivity");
  disp_cmd->add_option("--nu", lin.nu, "viscosity");
  disp_cmd->add_option("--a", lin.a, "damping");

  std::string csv_path, summary_config;
  auto* sum_cmd = app.add_subcommand("summarize", "check report for a diagnostics CSV");
  sum_cmd->add_option("csv", csv_path, "diagnostics CSV")->required();
  sum_cmd->add_option("--config", summary_config, "config supplying tolerances and model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(run_config, out, err);
    if (*norms_cmd) return cmd_norms(snapshot, triples, homogeneous, component, out);
    if (*disp_cmd) return cmd_dispersion(kmax, dk, lin, out);
    if (*sum_cmd) return cmd_summarize(csv_path, summary_config, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace oldroyd
