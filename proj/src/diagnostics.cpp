#include "oldroyd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oldroyd/errors.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {
namespace {

double parseval_scale(const GridSpec& g) {
  const double n2 = static_cast<double>(g.n) * g.n;
  return g.box_length * g.box_length / (n2 * n2);
}

double squared_l2(const VectorField2& u) {
  return weighted_energy(u.u1, 0) + weighted_energy(u.u2, 0);
}

double squared_grad(const VectorField2& u, int power) {
  return weighted_energy(u.u1, power) + weighted_energy(u.u2, power);
}

double squared_l2(const SymTensorField2& t) {
  return weighted_energy(t.t11, 0) + 2.0 * weighted_energy(t.t12, 0) + weighted_energy(t.t22, 0);
}

double squared_grad(const SymTensorField2& t, int power) {
  return weighted_energy(t.t11, power) + 2.0 * weighted_energy(t.t12, power) +
         weighted_energy(t.t22, power);
}

// <tau, grad u> = sum_ij <tau_ij, d_j u_i>
double tau_grad_u_pairing(const State& s) {
  return inner_product(s.tau.t11, partial1(s.u.u1)) +
         inner_product(s.tau.t12, partial2(s.u.u1) + partial1(s.u.u2)) +
         inner_product(s.tau.t22, partial2(s.u.u2));
}

void require_corotation(const History& h, const char* what) {
  if (h.params.rotation != RotationMode::corotation) {
    throw ContractError(std::string(what) + " applies to co-rotation runs only");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(SplittingFunction f) {
  return f == SplittingFunction::power ? "power" : "log_power";
}

SplittingFunction parse_splitting_function(const std::string& text) {
  if (text == "power") return SplittingFunction::power;
  if (text == "log_power") return SplittingFunction::log_power;
  throw ConfigError("unknown splitting function '" + text + "' (expected power or log_power)");
}

void DiagnosticsConfig::validate() const {
  auto check_p = [](const std::vector<double>& ps, const char* key) {
    for (double p : ps) {
      if (!(p >= 1.0)) throw ConfigError(std::string(key) + " entries must lie in [1, inf]");
    }
  };
  check_p(p_list, "diagnostics.p_list");
  check_p(gamma_p_list, "diagnostics.gamma_p_list");
  if (!(eta >= 0.0 && eta <= kEtaMax)) {
    throw ConfigError("diagnostics.eta must lie in [0, " + format_double(kEtaMax) + "]");
  }
  if (!(c2 > 0.0) || !std::isfinite(c2)) throw ConfigError("diagnostics.c2 must be > 0");
  if (!(f_exponent > 0.0) || !std::isfinite(f_exponent)) {
    throw ConfigError("diagnostics.f_exponent must be > 0");
  }
  for (double s : sigma_list) {
    if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("diagnostics.sigma_list entries must lie in [0, 1]");
  }
}

EnergyPair energy_pair(const State& in, double eta) {
  const State s = as_spectral(in);
  const double e0 = squared_l2(s.u) + squared_grad(s.u, 1) + squared_l2(s.tau) +
                    squared_grad(s.tau, 1);
  const double grad_u = squared_grad(s.u, 1);
  const double grad_tau_h1 = squared_grad(s.tau, 1) + squared_grad(s.tau, 2);
  return {e0 - eta * tau_grad_u_pairing(s), eta / 16.0 * grad_u + 0.25 * grad_tau_h1};
}

double splitting_rate(SplittingFunction f, double l, double t) {
  if (f == SplittingFunction::power) return l / (1.0 + t);
  const double e = std::numbers::e + t;
  return l / (e * std::log(e));
}

SplittingEnergy fourier_splitting_energy(const State& in, SplittingFunction f, double l,
                                         double c2) {
  if (!(c2 > 0.0)) throw ContractError("fourier_splitting_energy: C2 must be positive");
  const State s = as_spectral(in);
  const GridSpec& g = s.grid();
  SplittingEnergy out;
  const double r2 = c2 * splitting_rate(f, l, s.t);
  out.radius = std::sqrt(r2);
  const int cols = g.spectral_columns();
  const double unit = g.wavenumber_unit();
  const double mode_area = g.cell_area() * unit * unit;
  const ScalarField* uc[] = {&s.u.u1, &s.u.u2};
  const ScalarField* tc[] = {&s.tau.t11, &s.tau.t12, &s.tau.t22};
  double energy = 0.0, tau_abs = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double a = g.k1(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double b = g.k2(i2);
      if (a * a + b * b > r2) continue;
      const std::size_t idx = static_cast<std::size_t>(i1) * cols + i2;
      const double w = g.column_weight(i2);
      double eu = 0.0, et = 0.0;
      for (const ScalarField* c : uc) eu += std::norm(c->spectral()[idx]);
      for (int c = 0; c < 3; ++c) et += kTensorWeights[c] * std::norm(tc[c]->spectral()[idx]);
      energy += w * (eu + et);
      tau_abs += w * std::sqrt(et);
    }
  }
  out.lowfreq_energy = energy * parseval_scale(g);
  out.tau_hat_abs = tau_abs * mode_area;
  return out;
}

DiagnosticsRecord instantaneous_record(const State& in, const ModelParams& params,
                                       const DiagnosticsConfig& config,
                                       const lp::DyadicPartition& partition) {
  const State s = as_spectral(in);
  DiagnosticsRecord r;
  r.t = s.t;
  const double u2 = squared_l2(s.u);
  const double tau2 = squared_l2(s.tau);
  const double gu2 = squared_grad(s.u, 1);
  const double gt2 = squared_grad(s.tau, 1);
  const double ht2 = squared_grad(s.tau, 2);
  r.l2_u = std::sqrt(u2);
  r.l2_tau = std::sqrt(tau2);
  const VectorField2 ur = as_real(s.u);
  const SymTensorField2 tr = as_real(s.tau);
  for (double p : config.p_list) {
    r.lp_u[p] = lp_norm(ur, p);
    r.lp_tau[p] = lp_norm(tr, p);
  }
  r.h1_u = std::sqrt(u2 + gu2);
  r.h1_tau = std::sqrt(tau2 + gt2);
  r.grad_l2_u = std::sqrt(gu2);
  r.grad_l2_tau = std::sqrt(gt2);
  r.hess_l2_tau = std::sqrt(ht2);

  const double e0 = u2 + gu2 + tau2 + gt2;
  r.eta = config.eta;
  r.e_eta = e0 - config.eta * tau_grad_u_pairing(s);
  r.h_eta = config.eta / 16.0 * gu2 + 0.25 * (gt2 + ht2);
  r.eta_equivalence = r.e_eta >= 0.5 * e0 - 1e-14 * e0 && r.e_eta <= 2.0 * e0 + 1e-14 * e0;

  const SplittingEnergy se =
      fourier_splitting_energy(s, config.f_choice, config.f_exponent, config.c2);
  r.splitting_radius = se.radius;
  r.lowfreq_energy = se.lowfreq_energy;
  r.tau_hat_abs_lowfreq = se.tau_hat_abs;

  const VectorField2 divtau = divergence_tensor(s.tau);
  r.u_divtau = inner_product(s.u.u1, divtau.u1) + inner_product(s.u.u2, divtau.u2);

  if (config.gamma && !config.gamma_p_list.empty()) {
    const ScalarField gamma = gamma_field(s, params);
    for (double p : config.gamma_p_list) r.gamma_lp[p] = lp_norm(gamma, p);
  }
  if (config.besov) {
    const ScalarField* comps[] = {&s.u.u1, &s.u.u2, &s.tau.t11, &s.tau.t12, &s.tau.t22};
    const double w[] = {1.0, 1.0, 1.0, 2.0, 1.0};
    for (double sigma : config.sigma_list) {
      r.besov_neg[sigma] = lp::besov_norm(partition, comps, w, -sigma, 2.0, kInfinity, true);
    }
  }
  if (config.b0_infty1) r.b0_infty1_tau = lp::b0_infty1_norm(partition, s.tau);
  return r;
}

double RunningIntegral::interval(double lo, double hi) const {
  // Three-point Gauss-Legendre is exact for the cubic interpolant.
  static const double nodes[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double sum = 0.0;
  for (int q = 0; q < 3; ++q) {
    const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes[q];
    double p = 0.0;
    for (std::size_t i = 0; i < count_; ++i) {
      double l = 1.0;
      for (std::size_t j = 0; j < count_; ++j) {
        if (j != i) l *= (x - t_[j]) / (t_[i] - t_[j]);
      }
      p += l * f_[i];
    }
    sum += weights[q] * p;
  }
  return 0.5 * (hi - lo) * sum;
}

void RunningIntegral::add(double t, double f) {
  if (count_ > 0 && !(t > t_[count_ - 1])) return;
  if (count_ == 4) {
    std::copy(t_ + 1, t_ + 4, t_);
    std::copy(f_ + 1, f_ + 4, f_);
    --count_;
    warm_ = true;
  }
  t_[count_] = t;
  f_[count_] = f;
  ++count_;
  if (count_ < 2) return;
  if (warm_) {
    value_ += interval(t_[count_ - 2], t_[count_ - 1]);
    return;
  }
  // Until four samples exist the earlier intervals are redone with the
  // higher-degree interpolant.
  value_ = interval(t_[0], t_[count_ - 1]);
}

void DiagnosticsAccumulator::fold(DiagnosticsRecord& r) {
  const double a = params_.a, mu = params_.mu, nu = params_.nu;
  const double tau_sq = r.l2_tau * r.l2_tau;
  const double u_sq = r.l2_u * r.l2_u;
  const double tau_term = std::exp(2.0 * a * r.t) * 2.0 * mu * r.grad_l2_tau * r.grad_l2_tau;
  const double u_term = 2.0 * r.u_divtau - 2.0 * nu * r.grad_l2_u * r.grad_l2_u;
  const double b1_term = u_sq * r.l2_u + u_sq * tau_sq;
  const double b2_term = r.grad_l2_u * r.l2_tau * r.tau_hat_abs_lowfreq;

  if (first_) {
    first_ = false;
    tau0_sq_ = tau_sq;
    u0_sq_ = u_sq;
    u_scale_sq_ = u_sq;
  }
  tau_integral_.add(r.t, tau_term);
  u_integral_.add(r.t, u_term);
  b1_.add(r.t, b1_term);
  b2_.add(r.t, b2_term);
  if (r.b0_infty1_tau) b0_integral_.add(r.t, *r.b0_infty1_tau);
  u_scale_sq_ = std::max(u_scale_sq_, u_sq);

  r.b1 = b1_.value();
  r.b2 = b2_.value();
  if (r.b0_infty1_tau) r.b0_infty1_tau_integral = b0_integral_.value();
  for (const auto& [sigma, v] : r.besov_neg) {
    auto it = besov_sup_.find(sigma);
    if (it == besov_sup_.end()) {
      besov_sup_[sigma] = v;
    } else {
      it->second = std::max(it->second, v);
    }
    r.besov_sup[sigma] = besov_sup_[sigma];
  }
  if (params_.rotation == RotationMode::corotation) {
    const double lhs = std::exp(2.0 * a * r.t) * tau_sq + tau_integral_.value();
    const double tau_den = tau0_sq_ > 0.0 ? tau0_sq_ : 1.0;
    r.tau_identity_residual = std::abs(lhs - tau0_sq_) / tau_den;
    // The stress feeds the velocity energy, so its initial energy bounds the
    // scale from below when u starts at rest.
    const double u_scale = std::max(u_scale_sq_, tau0_sq_);
    const double u_den = u_scale > 0.0 ? u_scale : 1.0;
    r.velocity_energy_residual = std::abs(u_sq - u0_sq_ - u_integral_.value()) / u_den;
  } else {
    r.tau_identity_residual.reset();
    r.velocity_energy_residual.reset();
  }
}

DiagnosticsTracker::DiagnosticsTracker(const GridSpec& grid, const ModelParams& params,
                                       const DiagnosticsConfig& config)
    : history_{grid, params, config, {}}, partition_(grid), accumulator_(params) {
  config.validate();
}

const DiagnosticsRecord& DiagnosticsTracker::add(const State& s) {
  DiagnosticsRecord r = instantaneous_record(s, history_.params, history_.config, partition_);
  accumulator_.fold(r);
  history_.records.push_back(std::move(r));
  return history_.records.back();
}

namespace {

std::vector<DiagnosticsRecord> refold(const History& h) {
  std::vector<DiagnosticsRecord> out = h.records;
  DiagnosticsAccumulator acc(h.params);
  for (DiagnosticsRecord& r : out) acc.fold(r);
  return out;
}

}  // namespace

double tau_energy_identity(const History& h) {
  require_corotation(h, "tau_energy_identity");
  double worst = 0.0;
  for (const DiagnosticsRecord& r : refold(h)) worst = std::max(worst, *r.tau_identity_residual);
  return worst;
}

double tau_lp_decay_check(const History& h) {
  require_corotation(h, "tau_lp_decay_check");
  if (h.records.empty()) return 0.0;
  const DiagnosticsRecord& first = h.records.front();
  double worst = -kInfinity;
  for (const DiagnosticsRecord& r : h.records) {
    for (const auto& [p, v] : r.lp_tau) {
      auto it = first.lp_tau.find(p);
      if (it == first.lp_tau.end() || it->second == 0.0) continue;
      worst = std::max(worst, v * std::exp(h.params.a * (r.t - first.t)) / it->second - 1.0);
    }
  }
  return std::isfinite(worst) ? worst : 0.0;
}

double velocity_energy_balance(const History& h) {
  require_corotation(h, "velocity_energy_balance");
  double worst = 0.0;
  for (const DiagnosticsRecord& r : refold(h)) worst = std::max(worst, *r.velocity_energy_residual);
  return worst;
}

B1B2 accumulate_B1_B2(const History& h) {
  if (h.records.empty()) return {};
  const std::vector<DiagnosticsRecord> r = refold(h);
  return {r.back().b1, r.back().b2};
}

DecayFit decay_exponent_fit(const std::vector<double>& t, const std::vector<double>& q,
                            double t0, double t1) {
  if (t.size() != q.size()) throw ContractError("decay_exponent_fit: length mismatch");
  if (!(t1 > t0)) throw FitError("fit window is empty");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1) continue;
    if (!(q[i] > 0.0) || !std::isfinite(q[i])) {
      throw FitError("nonpositive value at t = " + format_double(t[i]));
    }
    x.push_back(std::log1p(t[i]));
    y.push_back(std::log(q[i]));
  }
  if (x.size() < kFitMinRecords) {
    throw FitError("only " + std::to_string(x.size()) + " records in the fit window (need " +
                   std::to_string(kFitMinRecords) + ")");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("fit window has a single time");
  DecayFit fit;
  fit.exponent = sxy / sxx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.count = x.size();
  fit.low_r2 = fit.r2 < kFitMinR2;
  return fit;
}

double select_quantity(const DiagnosticsRecord& r, const std::string& name) {
  if (name == "l2_total") return std::hypot(r.l2_u, r.l2_tau);
  if (name == "grad_total") return std::hypot(r.grad_l2_u, r.grad_l2_tau);
  if (name == "l2_u") return r.l2_u;
  if (name == "l2_tau") return r.l2_tau;
  if (name == "grad_l2_u") return r.grad_l2_u;
  if (name == "grad_l2_tau") return r.grad_l2_tau;
  if (name == "h1_u") return r.h1_u;
  if (name == "h1_tau") return r.h1_tau;
  if (name == "e_eta") return r.e_eta;
  throw ContractError("unknown fit quantity '" + name + "'");
}

DecayFit decay_exponent_fit(const History& h, const std::string& quantity, double t0,
                            double t1) {
  std::vector<double> t, q;
  for (const DiagnosticsRecord& r : h.records) {
    t.push_back(r.t);
    q.push_back(select_quantity(r, quantity));
  }
  return decay_exponent_fit(t, q, t0, t1);
}

double negative_besov_sup(const History& h, double sigma) {
  double m = 0.0;
  for (const DiagnosticsRecord& r : h.records) {
    auto it = r.besov_neg.find(sigma);
    if (it == r.besov_neg.end()) throw ContractError("records lack the requested sigma");
    m = std::max(m, it->second);
  }
  return m;
}

double monotonicity_check_E_eta(const History& h) {
  if (h.params.rotation != RotationMode::full) {
    throw ContractError("monotonicity_check_E_eta applies to noncorotation runs only");
  }
  double worst = 0.0;
  for (std::size_t k = 1; k < h.records.size(); ++k) {
    const double dt = h.records[k].t - h.records[k - 1].t;
    if (dt <= 0.0) continue;
    worst = std::max(worst, (h.records[k].e_eta - h.records[k - 1].e_eta) / dt);
  }
  return worst;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "t",           "l2_u",          "l2_tau",        "linf_tau",
      "h1_u",        "h1_tau",        "grad_l2_u",     "grad_l2_tau",
      "e_eta",       "h_eta",         "eta",           "lowfreq_energy",
      "splitting_radius", "b1",       "b2",            "tau_identity_residual",
      "velocity_energy_residual", "gamma_l2", "besov_m_sigma", "b0inf1_tau_integral"};
  return cols;
}

std::vector<std::optional<double>> csv_row(const DiagnosticsRecord& r) {
  auto lookup = [](const std::map<double, double>& m, double key) -> std::optional<double> {
    auto it = m.find(key);
    if (it == m.end()) return std::nullopt;
    return it->second;
  };
  std::optional<double> besov;
  if (!r.besov_sup.empty()) besov = r.besov_sup.begin()->second;
  return {r.t,
          r.l2_u,
          r.l2_tau,
          lookup(r.lp_tau, kInfinity),
          r.h1_u,
          r.h1_tau,
          r.grad_l2_u,
          r.grad_l2_tau,
          r.e_eta,
          r.h_eta,
          r.eta,
          r.lowfreq_energy,
          r.splitting_radius,
          r.b1,
          r.b2,
          r.tau_identity_residual,
          r.velocity_energy_residual,
          lookup(r.gamma_lp, 2.0),
          besov,
          r.b0_infty1_tau_integral};
}

void write_csv_header(std::ostream& os) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
  const auto row = csv_row(r);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    if (row[i]) os << format_double(*row[i]);
  }
  os << '\n';
}

std::vector<std::optional<double>> CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw SchemaError("no column named '" + name + "'");
  const std::size_t c = static_cast<std::size_t>(it - columns.begin());
  std::vector<std::optional<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw SchemaError("cannot open CSV: " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw SchemaError("CSV is empty: " + path.string());
  auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(text);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!text.empty() && text.back() == ',') cells.emplace_back();
    return cells;
  };
  table.columns = split(line);
  if (table.columns != csv_columns()) {
    throw SchemaError("CSV header does not match the diagnostics schema");
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) {
      throw SchemaError("CSV line " + std::to_string(lineno) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(table.columns.size()));
    }
    std::vector<std::optional<double>> row;
    for (const std::string& c : cells) {
      if (c.empty()) {
        row.emplace_back();
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size()) {
        throw SchemaError("CSV line " + std::to_string(lineno) + ": bad number '" + c + "'");
      }
      row.emplace_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace oldroyd
