#include "oldroyd/model.hpp"

#include <cmath>

#include "oldroyd/errors.hpp"
#include "oldroyd/littlewood_paley.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {
namespace {

constexpr Complex kI{0.0, 1.0};

struct VelocityGradient {
  ScalarField d1u1, d2u1, d1u2, d2u2;  // real space
};

VelocityGradient real_gradient(const VectorField2& u) {
  return {to_real(partial1(u.u1)), to_real(partial2(u.u1)), to_real(partial1(u.u2)),
          to_real(partial2(u.u2))};
}

// Adds Q(grad u, tau) evaluated pointwise to out11/out12/out22.
void accumulate_Q(const VelocityGradient& g, const SymTensorField2& tr, const ModelParams& p,
                  std::span<double> out11, std::span<double> out12, std::span<double> out22) {
  auto a11 = g.d1u1.real(), a12 = g.d2u1.real(), a21 = g.d1u2.real(), a22 = g.d2u2.real();
  auto t11 = tr.t11.real(), t12 = tr.t12.real(), t22 = tr.t22.real();
  const bool full = p.rotation == RotationMode::full;
  const double b = full ? p.b : 0.0;
  for (std::size_t i = 0; i < out11.size(); ++i) {
    const double w = a21[i] - a12[i];
    const double d11 = a11[i];
    const double d22 = a22[i];
    const double d12 = 0.5 * (a12[i] + a21[i]);
    out11[i] += t12[i] * w + 2.0 * b * (d11 * t11[i] + d12 * t12[i]);
    out12[i] += 0.5 * w * (t22[i] - t11[i]) +
                b * (t12[i] * (d11 + d22) + d12 * (t11[i] + t22[i]));
    out22[i] += -t12[i] * w + 2.0 * b * (d12 * t12[i] + d22 * t22[i]);
  }
}

ScalarField forward_dealiased(const ScalarField& real) {
  ScalarField s = to_spectral(real);
  dealias_in_place(s);
  return s;
}

}  // namespace

const char* to_string(RotationMode mode) {
  return mode == RotationMode::corotation ? "corotation" : "full";
}

RotationMode parse_rotation_mode(const std::string& text) {
  if (text == "corotation") return RotationMode::corotation;
  if (text == "full") return RotationMode::full;
  throw ConfigError("unknown rotation mode '" + text + "' (expected corotation or full)");
}

void ModelParams::validate() const {
  auto finite_nonneg = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError(std::string("model.") + name + " must be finite and >= 0");
    }
  };
  finite_nonneg(a, "a");
  finite_nonneg(mu, "mu");
  finite_nonneg(nu, "nu");
  if (!std::isfinite(alpha) || alpha <= 0.0) throw ConfigError("model.alpha must be > 0");
  if (!std::isfinite(b) || b < -1.0 || b > 1.0) throw ConfigError("model.b must lie in [-1, 1]");
}

State as_spectral(const State& s) { return {s.t, as_spectral(s.u), as_spectral(s.tau)}; }

SymTensorField2 deformation(const VectorField2& u) {
  ScalarField d12 = partial2(u.u1) + partial1(u.u2);
  d12 *= 0.5;
  return {partial1(u.u1), std::move(d12), partial2(u.u2)};
}

ScalarField vorticity_part(const VectorField2& u) { return curl2d(u); }

SymTensorField2 bilinear_Q(const VectorField2& u, const SymTensorField2& tau,
                           const ModelParams& params) {
  const GridSpec& g = u.grid();
  const VelocityGradient grad = real_gradient(u);
  const SymTensorField2 tr = as_real(tau);
  SymTensorField2 q = SymTensorField2::zeros(g, Representation::real);
  accumulate_Q(grad, tr, params, q.t11.real(), q.t12.real(), q.t22.real());
  return {forward_dealiased(q.t11), forward_dealiased(q.t12), forward_dealiased(q.t22)};
}

StateRate nonlinear_rhs(const State& s, const ModelParams& params) {
  if (!s.u.u1.is_spectral() || !s.tau.t11.is_spectral()) {
    throw ContractError("nonlinear_rhs: state must be spectral");
  }
  const GridSpec& g = s.grid();
  const VectorField2 ur = as_real(s.u);
  const VelocityGradient grad = real_gradient(s.u);
  const SymTensorField2 tr = as_real(s.tau);
  const std::size_t size = g.real_size();

  // Real-space products: A = u.grad u and T = u.grad tau + Q.
  ScalarField A1(g, Representation::real), A2(g, Representation::real);
  {
    auto u1 = ur.u1.real(), u2 = ur.u2.real();
    auto a11 = grad.d1u1.real(), a12 = grad.d2u1.real();
    auto a21 = grad.d1u2.real(), a22 = grad.d2u2.real();
    auto o1 = A1.real(), o2 = A2.real();
    for (std::size_t i = 0; i < size; ++i) {
      o1[i] = u1[i] * a11[i] + u2[i] * a12[i];
      o2[i] = u1[i] * a21[i] + u2[i] * a22[i];
    }
  }
  SymTensorField2 T = SymTensorField2::zeros(g, Representation::real);
  {
    auto u1 = ur.u1.real(), u2 = ur.u2.real();
    const ScalarField* comps[] = {&s.tau.t11, &s.tau.t12, &s.tau.t22};
    ScalarField* outs[] = {&T.t11, &T.t12, &T.t22};
    for (int c = 0; c < 3; ++c) {
      const ScalarField d1 = to_real(partial1(*comps[c]));
      const ScalarField d2 = to_real(partial2(*comps[c]));
      auto x = d1.real(), y = d2.real();
      auto o = outs[c]->real();
      for (std::size_t i = 0; i < size; ++i) o[i] = u1[i] * x[i] + u2[i] * y[i];
    }
  }
  accumulate_Q(grad, tr, params, T.t11.real(), T.t12.real(), T.t22.real());

  VectorField2 adv{forward_dealiased(A1), forward_dealiased(A2)};
  VectorField2 force = divergence_tensor(s.tau);
  force -= adv;
  StateRate out{leray_project(force), SymTensorField2{forward_dealiased(T.t11),
                                                      forward_dealiased(T.t12),
                                                      forward_dealiased(T.t22)}};
  out.tau *= -1.0;
  if (params.rotation == RotationMode::full) {
    SymTensorField2 d = deformation(s.u);
    d *= params.alpha;
    out.tau += d;
  }
  return out;
}

StateRate rhs(const State& s, const ModelParams& params) {
  const State ss = as_spectral(s);
  StateRate r = nonlinear_rhs(ss, params);
  if (params.nu != 0.0) {
    VectorField2 lap = laplacian(ss.u);
    lap *= params.nu;
    r.u += lap;
  }
  SymTensorField2 lin = laplacian(ss.tau);
  lin *= params.mu;
  SymTensorField2 damp = ss.tau;
  damp *= params.a;
  lin -= damp;
  r.tau += lin;
  return r;
}

VectorField2 rhs_velocity(const State& s, const ModelParams& params) { return rhs(s, params).u; }

SymTensorField2 rhs_stress(const State& s, const ModelParams& params) {
  return rhs(s, params).tau;
}

ScalarField pressure_recover(const State& s, const ModelParams&) {
  const State ss = as_spectral(s);
  const VectorField2 ur = as_real(ss.u);
  VectorField2 w = divergence_tensor(ss.tau);
  w.u1 -= advect(ur, ss.u.u1);
  w.u2 -= advect(ur, ss.u.u2);
  // P = -i (k~ . w) / |k~|^2 so that i k~ P is the gradient part of w.
  const GridSpec& g = ss.grid();
  ScalarField p = ScalarField::zeros(g);
  auto out = p.spectral();
  auto a = w.u1.spectral();
  auto b = w.u2.spectral();
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.k1_derivative(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double k2 = g.k2_derivative(i2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const std::size_t idx = static_cast<std::size_t>(i1) * cols + i2;
      out[idx] = -kI * (k1 * a[idx] + k2 * b[idx]) / kk;
    }
  }
  return p;
}

ScalarField gamma_field(const State& s, const ModelParams& params) {
  ScalarField gamma = curl2d(s.u);
  gamma *= params.mu;
  gamma -= riesz_R(s.tau);
  return gamma;
}

double gamma_residual(const State& s, const StateRate& ds, const ModelParams& params) {
  const State ss = as_spectral(s);
  const VectorField2 ur = as_real(ss.u);
  const ScalarField omega = curl2d(ss.u);

  ScalarField res = curl2d(ds.u);
  res *= params.mu;
  res -= riesz_R(ds.tau);
  res += advect(ur, gamma_field(ss, params));
  ScalarField r_tau = riesz_R(ss.tau);
  res.axpy(-params.a, r_tau);
  res -= riesz_R(bilinear_Q(ss.u, ss.tau, params));
  res -= lp::riesz_commutator(ss.u, ss.tau);
  if (params.rotation == RotationMode::full) res.axpy(0.5 * params.alpha, omega);
  if (params.nu != 0.0) res.axpy(-params.mu * params.nu, laplacian(omega));
  return l2_norm_spectral(res);
}

}  // namespace oldroyd
