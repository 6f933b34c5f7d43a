#include "oldroyd/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>

#include "oldroyd/errors.hpp"

namespace oldroyd {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CheckResult bound_check(const std::string& name, double observed, double tol) {
  CheckResult c;
  c.name = name;
  c.target = "<= " + fmt(tol);
  c.observed = observed;
  c.tolerance = tol;
  c.verdict = observed <= tol ? Verdict::pass : Verdict::fail;
  return c;
}

CheckResult not_applicable(const std::string& name, const std::string& why) {
  CheckResult c;
  c.name = name;
  c.target = "-";
  c.verdict = Verdict::not_applicable;
  c.note = why;
  return c;
}

std::optional<double> max_field(const History& h,
                                std::optional<double> DiagnosticsRecord::*field) {
  std::optional<double> m;
  for (const DiagnosticsRecord& r : h.records) {
    const auto& v = r.*field;
    if (v) m = std::max(m.value_or(0.0), *v);
  }
  return m;
}

CheckResult fit_check(const History& h, const ChecksConfig& checks, const std::string& name,
                      const std::string& quantity, const std::vector<double>& range) {
  CheckResult c;
  c.name = name;
  const bool configured = checks.fit_window.size() == 2;
  double t0 = 0.0, t1 = 0.0;
  if (configured) {
    t0 = checks.fit_window[0];
    t1 = checks.fit_window[1];
  } else if (!h.records.empty()) {
    t0 = h.records.front().t;
    t1 = h.records.back().t;
  }
  c.target = "[" + fmt(range[0]) + ", " + fmt(range[1]) + "], r2 >= " + fmt(checks.min_r2);
  try {
    const DecayFit fit = decay_exponent_fit(h, quantity, t0, t1);
    c.observed = fit.exponent;
    c.note = "r2 = " + fmt(fit.r2) + ", " + std::to_string(fit.count) + " records in [" + fmt(t0) +
             ", " + fmt(t1) + "]";
    if (!configured) {
      c.verdict = Verdict::info;
      c.note += "; no fit window configured";
    } else {
      const bool ok = fit.exponent >= range[0] && fit.exponent <= range[1] && fit.r2 >= checks.min_r2;
      c.verdict = ok ? Verdict::pass : Verdict::fail;
    }
  } catch (const FitError& e) {
    c.verdict = Verdict::insufficient_signal;
    c.note = e.what();
  }
  return c;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::insufficient_signal: return "insufficient signal";
    case Verdict::not_applicable: return "not applicable";
    case Verdict::info: return "info";
  }
  return "?";
}

bool Report::failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.verdict == Verdict::fail; });
}

Report summarize(const History& h, const ChecksConfig& checks) {
  Report r;
  r.records = h.records.size();
  if (!h.records.empty()) r.t_final = h.records.back().t;
  const bool corot = h.params.rotation == RotationMode::corotation;

  if (corot) {
    r.checks.push_back(bound_check("tau_energy_identity",
                                   max_field(h, &DiagnosticsRecord::tau_identity_residual).value_or(0.0),
                                   checks.tau_identity));
    r.checks.push_back(bound_check("tau_lp_decay", tau_lp_decay_check(h), checks.tau_lp_decay));
    r.checks.push_back(bound_check("velocity_energy_balance",
                                   max_field(h, &DiagnosticsRecord::velocity_energy_residual).value_or(0.0),
                                   checks.velocity_energy));
    r.checks.push_back(not_applicable("e_eta_monotonicity", "co-rotation run"));
  } else {
    const std::string why = "noncorotation run";
    r.checks.push_back(not_applicable("tau_energy_identity", why));
    r.checks.push_back(not_applicable("tau_lp_decay", why));
    r.checks.push_back(not_applicable("velocity_energy_balance", why));
    r.checks.push_back(bound_check("e_eta_monotonicity", monotonicity_check_E_eta(h),
                                   checks.e_eta_increment));
  }
  r.checks.push_back(fit_check(h, checks, "decay_exponent_l2", "l2_total", checks.l2_exponent));
  r.checks.push_back(fit_check(h, checks, "decay_exponent_grad", "grad_total", checks.grad_exponent));
  return r;
}

Report summarize_csv(const CsvTable& table, const ChecksConfig& checks, const ModelParams& params) {
  History h;
  h.params = params;
  const auto& cols = table.columns;
  auto index = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
  };
  auto required = [&](const std::vector<std::optional<double>>& row, const std::string& name,
                      std::size_t line) {
    const auto& v = row[index(name)];
    if (!v) throw SchemaError("CSV row " + std::to_string(line) + " lacks a value for '" + name + "'");
    return *v;
  };
  bool any_identity = false;
  std::size_t line = 1;
  for (const auto& row : table.rows) {
    ++line;
    DiagnosticsRecord rec;
    rec.t = required(row, "t", line);
    rec.l2_u = required(row, "l2_u", line);
    rec.l2_tau = required(row, "l2_tau", line);
    rec.grad_l2_u = required(row, "grad_l2_u", line);
    rec.grad_l2_tau = required(row, "grad_l2_tau", line);
    rec.e_eta = required(row, "e_eta", line);
    rec.lp_tau[2.0] = rec.l2_tau;
    if (const auto& v = row[index("linf_tau")]) rec.lp_tau[kInfinity] = *v;
    rec.tau_identity_residual = row[index("tau_identity_residual")];
    rec.velocity_energy_residual = row[index("velocity_energy_residual")];
    any_identity = any_identity || rec.tau_identity_residual.has_value();
    h.records.push_back(std::move(rec));
  }
  // The identity columns are written for co-rotation runs only.
  if (!h.records.empty()) {
    h.params.rotation = any_identity ? RotationMode::corotation : RotationMode::full;
  }
  return summarize(h, checks);
}

void write_report_kv(std::ostream& os, const Report& r) {
  os << "run.status = " << r.status << '\n';
  if (r.blowup_time) os << "run.blowup_time = " << fmt_full(*r.blowup_time) << '\n';
  os << "run.records = " << r.records << '\n';
  if (r.t_final) os << "run.t_final = " << fmt_full(*r.t_final) << '\n';
  for (const CheckResult& c : r.checks) {
    const std::string p = "check." + c.name + ".";
    os << p << "target = " << c.target << '\n';
    os << p << "observed = " << (c.observed ? fmt_full(*c.observed) : "") << '\n';
    os << p << "tolerance = " << (c.tolerance ? fmt_full(*c.tolerance) : "") << '\n';
    os << p << "verdict = " << to_string(c.verdict) << '\n';
    if (!c.note.empty()) os << p << "note = " << c.note << '\n';
  }
  os << "overall = " << (r.failed() ? "fail" : "pass") << '\n';
}

void write_report_text(std::ostream& os, const Report& r) {
  os << "Run " << r.status;
  if (r.blowup_time) os << " at t = " << fmt(*r.blowup_time);
  os << ", " << r.records << " records";
  if (r.t_final) os << ", last t = " << fmt(*r.t_final);
  os << "\n\n";
  os << std::left << std::setw(26) << "check" << std::setw(34) << "target" << std::setw(16)
     << "observed" << std::setw(20) << "verdict" << "note\n";
  for (const CheckResult& c : r.checks) {
    os << std::left << std::setw(26) << c.name << std::setw(34) << c.target << std::setw(16)
       << (c.observed ? fmt(*c.observed) : "-") << std::setw(20) << to_string(c.verdict) << c.note
       << '\n';
  }
  os << "\nOverall: " << (r.failed() ? "FAIL" : "pass") << '\n';
}

}  // namespace oldroyd
