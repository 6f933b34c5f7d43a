#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oldroyd/littlewood_paley.hpp"
#include "oldroyd/model.hpp"
#include "oldroyd/norms.hpp"

namespace oldroyd {

enum class SplittingFunction {
  power,      // f(t) = (1 + t)^l
  log_power,  // f(t) = ln^l(e + t)
};

const char* to_string(SplittingFunction f);
SplittingFunction parse_splitting_function(const std::string& text);

struct DiagnosticsConfig {
  std::vector<double> p_list{2.0, 4.0, kInfinity};
  double eta = 0.125;
  double c2 = 100.0;
  SplittingFunction f_choice = SplittingFunction::power;
  double f_exponent = 2.0;
  std::vector<double> sigma_list{1.0};
  std::vector<double> gamma_p_list{2.0};
  // The Littlewood-Paley quantities dominate the record cost.
  bool besov = true;
  bool b0_infty1 = true;
  bool gamma = true;

  void validate() const;
  bool operator==(const DiagnosticsConfig&) const = default;
};

// Largest eta accepted by the configuration; see energy_pair.
inline constexpr double kEtaMax = 1.0;

struct DiagnosticsRecord {
  double t = 0.0;
  double l2_u = 0.0;
  double l2_tau = 0.0;
  std::map<double, double> lp_u;
  std::map<double, double> lp_tau;
  double h1_u = 0.0;
  double h1_tau = 0.0;
  double grad_l2_u = 0.0;
  double grad_l2_tau = 0.0;
  // ||grad grad tau||
  double hess_l2_tau = 0.0;
  double e_eta = 0.0;
  double h_eta = 0.0;
  double eta = 0.0;
  // 1/2 E_0 <= E_eta <= 2 E_0
  bool eta_equivalence = true;
  double lowfreq_energy = 0.0;
  double splitting_radius = 0.0;
  // int_{S(t)} |tau^| d xi
  double tau_hat_abs_lowfreq = 0.0;
  // <u, div tau>
  double u_divtau = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  std::optional<double> tau_identity_residual;
  std::optional<double> velocity_energy_residual;
  std::map<double, double> gamma_lp;
  // Instantaneous homogeneous B^{-sigma}_{2,inf} norm of (u, tau) and its running maximum.
  std::map<double, double> besov_neg;
  std::map<double, double> besov_sup;
  std::optional<double> b0_infty1_tau;
  std::optional<double> b0_infty1_tau_integral;
};

struct History {
  GridSpec grid;
  ModelParams params;
  DiagnosticsConfig config;
  std::vector<DiagnosticsRecord> records;
};

// Instantaneous quantities.
struct EnergyPair {
  double e_eta = 0.0;
  double h_eta = 0.0;
};
// E_eta = ||(u,tau)||_{H1}^2 - eta <tau, grad u>,
// H_eta = eta/16 ||grad u||^2 + 1/4 (||grad tau||^2 + ||grad grad tau||^2).
EnergyPair energy_pair(const State& s, double eta);

struct SplittingEnergy {
  double radius = 0.0;
  double lowfreq_energy = 0.0;
  double tau_hat_abs = 0.0;
};
double splitting_rate(SplittingFunction f, double l, double t);  // f'(t) / f(t)
SplittingEnergy fourier_splitting_energy(const State& s, SplittingFunction f, double l,
                                         double c2);

// Time integral of sampled values. Each new interval is integrated with the
// interpolant through the last (up to) four samples, so uniform and
// nonuniform spacing both get fourth-order accuracy.
class RunningIntegral {
 public:
  void add(double t, double f);
  double value() const { return value_; }
  std::size_t samples() const { return count_; }

 private:
  double interval(double lo, double hi) const;

  double t_[4] = {};
  double f_[4] = {};
  std::size_t count_ = 0;
  double value_ = 0.0;
  bool warm_ = false;
};

// Folds the time integrals of consecutive records and fills the accumulated
// fields (b1, b2, identity residuals, besov_sup, b0_infty1_tau_integral) from
// the instantaneous ones.
class DiagnosticsAccumulator {
 public:
  explicit DiagnosticsAccumulator(const ModelParams& params) : params_(params) {}
  void fold(DiagnosticsRecord& r);

 private:
  ModelParams params_;
  bool first_ = true;
  double tau0_sq_ = 0.0;
  double u0_sq_ = 0.0;
  double u_scale_sq_ = 0.0;
  RunningIntegral tau_integral_;
  RunningIntegral u_integral_;
  RunningIntegral b1_;
  RunningIntegral b2_;
  RunningIntegral b0_integral_;
  std::map<double, double> besov_sup_;
};

// Computes the instantaneous quantities of a state.
DiagnosticsRecord instantaneous_record(const State& s, const ModelParams& params,
                                       const DiagnosticsConfig& config,
                                       const lp::DyadicPartition& partition);

class DiagnosticsTracker {
 public:
  DiagnosticsTracker(const GridSpec& grid, const ModelParams& params,
                     const DiagnosticsConfig& config);

  const DiagnosticsRecord& add(const State& s);
  const History& history() const { return history_; }

 private:
  History history_;
  lp::DyadicPartition partition_;
  DiagnosticsAccumulator accumulator_;
};

// History checks. Each throws ContractError for an unsuitable model mode.

// max over records of |e^{2at}||tau||^2 + 2 mu int e^{2as}||grad tau||^2 - ||tau0||^2| / ||tau0||^2
// (co-rotation only).
double tau_energy_identity(const History& h);
// max over records and p of ||tau(t)||_p e^{at} / ||tau0||_p - 1 (co-rotation only).
double tau_lp_decay_check(const History& h);
// max over records of
// |||u||^2 - ||u0||^2 - 2 int <u, div tau> + 2 nu int ||grad u||^2|
// relative to max(max_t ||u||^2, ||tau0||^2) (co-rotation only).
double velocity_energy_balance(const History& h);

struct B1B2 {
  double b1 = 0.0;
  double b2 = 0.0;
};
B1B2 accumulate_B1_B2(const History& h);

struct DecayFit {
  double exponent = 0.0;
  double r2 = 0.0;
  std::size_t count = 0;
  bool low_r2 = false;  // r2 < kFitMinR2
};
inline constexpr double kFitMinR2 = 0.95;
inline constexpr std::size_t kFitMinRecords = 10;

// Least-squares slope of log q against log(1 + t) over records with
// t0 <= t <= t1. Throws FitError with fewer than 10 samples or a
// nonpositive value.
DecayFit decay_exponent_fit(const std::vector<double>& t, const std::vector<double>& q,
                            double t0, double t1);

// Named quantities usable by the fit: l2_total, grad_total, l2_u, l2_tau,
// grad_l2_u, grad_l2_tau, h1_u, h1_tau, e_eta.
double select_quantity(const DiagnosticsRecord& r, const std::string& name);
DecayFit decay_exponent_fit(const History& h, const std::string& quantity, double t0, double t1);

// Running maximum of the homogeneous B^{-sigma}_{2,inf} norm of (u, tau).
double negative_besov_sup(const History& h, double sigma);

// max over consecutive records of (E_eta(t_{k+1}) - E_eta(t_k)) / dt
// (full mode only). Returns 0 for fewer than two records.
double monotonicity_check_E_eta(const History& h);

// CSV time series with the fixed column set below; missing values are empty.
const std::vector<std::string>& csv_columns();
std::vector<std::optional<double>> csv_row(const DiagnosticsRecord& r);
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagnosticsRecord& r);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  std::vector<std::optional<double>> column(const std::string& name) const;
};
// Throws SchemaError unless the header matches csv_columns() exactly.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace oldroyd
