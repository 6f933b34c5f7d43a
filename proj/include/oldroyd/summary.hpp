#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oldroyd/config.hpp"
#include "oldroyd/diagnostics.hpp"

namespace oldroyd {

enum class Verdict {
  pass,
  fail,
  insufficient_signal,
  not_applicable,
  // Computed without a configured acceptance range.
  info,
};

const char* to_string(Verdict v);

struct CheckResult {
  std::string name;
  std::string target;
  std::optional<double> observed;
  std::optional<double> tolerance;
  Verdict verdict = Verdict::not_applicable;
  std::string note;
};

struct Report {
  std::string status = "completed";  // or "blowup"
  std::optional<double> blowup_time;
  std::size_t records = 0;
  std::optional<double> t_final;
  std::vector<CheckResult> checks;

  bool failed() const;
};

// Checks on a recorded history. Identity residuals are read from the
// records; the L^p decay margin uses every recorded p.
Report summarize(const History& history, const ChecksConfig& checks);

// The same checks on a diagnostics CSV. The CSV carries the L^2 and L^inf
// norms of tau only, so the decay margin uses those two exponents with the
// damping rate of `params`. Throws SchemaError for a malformed CSV.
Report summarize_csv(const CsvTable& table, const ChecksConfig& checks, const ModelParams& params);

void write_report_kv(std::ostream& os, const Report& r);
void write_report_text(std::ostream& os, const Report& r);

}  // namespace oldroyd
