#include "oldroyd/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "oldroyd/errors.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {
namespace {

// exp(L h) per stored mode for the velocity and stress components.
struct Factors {
  AlignedVector<double> u;
  AlignedVector<double> tau;
};

Factors make_factors(const GridSpec& g, const ModelParams& p, double h) {
  Factors f;
  f.u.resize(g.spectral_size());
  f.tau.resize(g.spectral_size());
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double a = g.k1(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double b = g.k2(i2);
      const double kk = a * a + b * b;
      const std::size_t idx = static_cast<std::size_t>(i1) * cols + i2;
      // Negative h (used by SSPRK3) amplifies; cap the exponent so that
      // 0 * factor never becomes NaN.
      f.u[idx] = std::exp(std::min(700.0, -p.nu * kk * h));
      f.tau[idx] = std::exp(std::min(700.0, -(p.a + p.mu * kk) * h));
    }
  }
  return f;
}

void scale(ScalarField& x, const AlignedVector<double>& f) {
  auto d = x.spectral();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] *= f[i];
}

// In-place E y for a state or rate.
template <class S>
void apply(S& y, const Factors& f) {
  scale(y.u.u1, f.u);
  scale(y.u.u2, f.u);
  scale(y.tau.t11, f.tau);
  scale(y.tau.t12, f.tau);
  scale(y.tau.t22, f.tau);
}

template <class S>
S applied(S y, const Factors& f) {
  apply(y, f);
  return y;
}

// y += c k
template <class S, class R>
void axpy(S& y, double c, const R& k) {
  y.u.u1.axpy(c, k.u.u1);
  y.u.u2.axpy(c, k.u.u2);
  y.tau.t11.axpy(c, k.tau.t11);
  y.tau.t12.axpy(c, k.tau.t12);
  y.tau.t22.axpy(c, k.tau.t22);
}

template <class S>
void scale_all(S& y, double c) {
  y.u *= c;
  y.tau *= c;
}

bool all_finite(const State& s) {
  for (const ScalarField* c : {&s.u.u1, &s.u.u2, &s.tau.t11, &s.tau.t12, &s.tau.t22}) {
    for (Complex z : c->spectral()) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

double h1_norm(const State& s) {
  double e = 0.0;
  for (const ScalarField* c : {&s.u.u1, &s.u.u2}) {
    e += weighted_energy(*c, 0) + weighted_energy(*c, 1);
  }
  const ScalarField* comps[] = {&s.tau.t11, &s.tau.t12, &s.tau.t22};
  for (int c = 0; c < 3; ++c) {
    e += kTensorWeights[c] * (weighted_energy(*comps[c], 0) + weighted_energy(*comps[c], 1));
  }
  return std::sqrt(e);
}

State step_rk4(const State& y, const ModelParams& p, double h, const Factors& full,
               const Factors& half) {
  const StateRate k1 = nonlinear_rhs(y, p);

  State ya = y;
  axpy(ya, 0.5 * h, k1);
  apply(ya, half);
  const StateRate k2 = nonlinear_rhs(ya, p);

  State yb = applied(y, half);
  axpy(yb, 0.5 * h, k2);
  const StateRate k3 = nonlinear_rhs(yb, p);

  State yc = applied(y, full);
  axpy(yc, h, applied(k3, half));
  const StateRate k4 = nonlinear_rhs(yc, p);

  StateRate mid = k2;
  axpy(mid, 1.0, k3);
  apply(mid, half);
  State out = applied(y, full);
  axpy(out, h / 6.0, applied(k1, full));
  axpy(out, h / 3.0, mid);
  axpy(out, h / 6.0, k4);
  return out;
}

State step_ssprk3(const State& y, const ModelParams& p, double h, const Factors& full,
                  const Factors& half, const Factors& back_half) {
  const StateRate n0 = nonlinear_rhs(y, p);

  State euler = y;
  axpy(euler, h, n0);
  const State y1 = applied(euler, full);
  const StateRate n1 = nonlinear_rhs(y1, p);

  // y2 = 3/4 E(h/2) y + 1/4 [E(h/2)(y + h N(y)) + h E(-h/2) N(y1)]
  State y2 = applied(y, half);
  scale_all(y2, 0.75);
  State quarter = applied(euler, half);
  axpy(quarter, h, applied(n1, back_half));
  axpy(y2, 0.25, quarter);
  const StateRate n2 = nonlinear_rhs(y2, p);

  // y+ = 1/3 E(h) y + 2/3 E(h/2)(y2 + h N(y2))
  State tail = y2;
  axpy(tail, h, n2);
  apply(tail, half);
  State out = applied(y, full);
  scale_all(out, 1.0 / 3.0);
  axpy(out, 2.0 / 3.0, tail);
  return out;
}

}  // namespace

const char* to_string(Scheme scheme) {
  return scheme == Scheme::if_rk4 ? "IF-RK4" : "IF-SSPRK3";
}

Scheme parse_scheme(const std::string& text) {
  if (text == "IF-RK4") return Scheme::if_rk4;
  if (text == "IF-SSPRK3") return Scheme::if_ssprk3;
  throw ConfigError("unknown scheme '" + text + "' (expected IF-RK4 or IF-SSPRK3)");
}

void StepperConfig::validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) throw ConfigError("stepper.dt must be > 0");
  if (!std::isfinite(t_end) || t_end < 0.0) throw ConfigError("stepper.t_end must be >= 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw ConfigError("stepper.cfl_safety must lie in (0, 1]");
  }
  if (!std::isfinite(dt_max) || dt_max <= 0.0) throw ConfigError("stepper.dt_max must be > 0");
  if (!(blowup_factor > 1.0)) throw ConfigError("stepper.blowup_factor must be > 1");
}

State step(const State& s, const ModelParams& params, Scheme scheme, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ContractError("step: h must be positive");
  const State y = as_spectral(s);
  const GridSpec& g = y.grid();
  const Factors full = make_factors(g, params, h);
  const Factors half = make_factors(g, params, 0.5 * h);
  State out = scheme == Scheme::if_rk4
                  ? step_rk4(y, params, h, full, half)
                  : step_ssprk3(y, params, h, full, half, make_factors(g, params, -0.5 * h));
  out.u = leray_project(out.u);
  out.t = y.t + h;
  if (!all_finite(out)) {
    throw BlowUpError("non-finite field at t = " + std::to_string(out.t), y);
  }
  return out;
}

double cfl_dt(const State& s, const StepperConfig& cfg, double previous_dt) {
  const VectorField2 ur = as_real(s.u);
  auto a = ur.u1.real();
  auto b = ur.u2.real();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::hypot(a[i], b[i]));
  double dt = cfg.cfl_safety * s.grid().dx() / (m + 1e-12);
  dt = std::min(dt, cfg.dt_max);
  if (previous_dt > 0.0) dt = std::min(dt, 2.0 * previous_dt);
  return dt;
}

RunResult run(const State& initial, const ModelParams& params, const StepperConfig& cfg,
              const RunHooks& hooks) {
  params.validate();
  cfg.validate();
  State y = as_spectral(initial);
  const double t0 = y.t;
  const double ceiling = cfg.blowup_factor * h1_norm(y);

  std::vector<double> pending = hooks.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  auto fire_snapshots = [&](const State& s, double half_step, bool final) {
    while (next_snapshot < pending.size() &&
           (final || s.t >= pending[next_snapshot] - half_step)) {
      if (hooks.on_snapshot) hooks.on_snapshot(s, pending[next_snapshot]);
      ++next_snapshot;
    }
  };

  auto record = [&](const State& s) {
    if (hooks.on_record) hooks.on_record(s);
  };
  record(y);
  fire_snapshots(y, 0.5 * cfg.dt, false);

  long k = 0;
  long next_record = 1;
  bool recorded_last = true;
  double h_prev = 0.0;
  const double eps = 1e-9 * cfg.dt;
  while (y.t < cfg.t_end - eps) {
    double h;
    if (cfg.adapt) {
      h = cfl_dt(y, cfg, h_prev);
      if (y.t + h > cfg.t_end - eps) h = cfg.t_end - y.t;
    } else {
      const double target = t0 + static_cast<double>(k + 1) * cfg.dt;
      h = (target >= cfg.t_end - eps) ? cfg.t_end - y.t : target - y.t;
    }
    State next = step(y, params, cfg.scheme, h);
    ++k;
    if (!cfg.adapt) {
      const double target = t0 + static_cast<double>(k) * cfg.dt;
      next.t = (target >= cfg.t_end - eps) ? cfg.t_end : target;
    }
    if (hooks.after_step) hooks.after_step(next);
    if (std::isfinite(ceiling) && ceiling > 0.0 && h1_norm(next) > ceiling) {
      throw BlowUpError("H1 norm exceeded the blow-up ceiling at t = " + std::to_string(next.t), y);
    }
    y = std::move(next);
    h_prev = h;

    recorded_last = false;
    if (hooks.cadence <= 0.0) {
      record(y);
      recorded_last = true;
    } else if (y.t - t0 >= static_cast<double>(next_record) * hooks.cadence - 0.5 * h) {
      record(y);
      recorded_last = true;
      while (static_cast<double>(next_record) * hooks.cadence <= y.t - t0 + 0.5 * h) ++next_record;
    }
    fire_snapshots(y, 0.5 * h, false);
  }
  if (!recorded_last) record(y);
  fire_snapshots(y, 0.0, true);
  return {std::move(y), k};
}

}  // namespace oldroyd
