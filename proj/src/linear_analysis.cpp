#include "oldroyd/linear_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "oldroyd/errors.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd::linear {
namespace {

struct Coefficients {
  double trace;
  double det;
};

Coefficients coefficients(double k, const LinearParams& p) {
  const double k2 = k * k;
  const double m11 = -p.nu * k2;
  const double m22 = -p.a - p.mu * k2;
  return {m11 + m22, m11 * m22 + 0.5 * p.alpha * k2};
}

}  // namespace

Matrix2 mode_matrix(double k, const LinearParams& p) {
  const double k2 = k * k;
  return {{{-p.nu * k2, 1.0}, {-0.5 * p.alpha * k2, -p.a - p.mu * k2}}};
}

std::array<Complex, 2> mode_eigenvalues(double k, const LinearParams& p) {
  if (!(k > 0.0)) throw ContractError("mode_eigenvalues: k must be positive");
  const auto [tr, det] = coefficients(k, p);
  const double c = 0.5 * tr;
  const double disc = c * c - det;
  if (disc >= 0.0) {
    // Larger-magnitude root first, the other from the product to avoid cancellation.
    const double big = c - std::sqrt(disc);  // c <= 0
    if (big == 0.0) return {Complex(0.0), Complex(0.0)};
    const double small = det / big;
    return {Complex(std::max(small, big)), Complex(std::min(small, big))};
  }
  const double im = std::sqrt(-disc);
  return {Complex(c, im), Complex(c, -im)};
}

Matrix2 mode_propagator(double k, double t, const LinearParams& p) {
  const Matrix2 m = mode_matrix(k, p);
  const auto [tr, det] = coefficients(k, p);
  const Complex c = 0.5 * tr;
  const Complex d = std::sqrt(Complex(0.5 * tr * 0.5 * tr - det, 0.0));
  const Complex z = d * t;
  // e^{Mt} = A I + B M with A = e^{ct}(cosh z - c sinh(z)/d), B = e^{ct} sinh(z)/d.
  Complex ch, sh_over_d;
  if (std::abs(z) < 1e-3) {
    const Complex z2 = z * z;
    ch = std::exp(c * t) * (1.0 + z2 / 2.0 + z2 * z2 / 24.0 + z2 * z2 * z2 / 720.0);
    sh_over_d = std::exp(c * t) * t * (1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0);
  } else {
    // Written with the eigenvalue exponentials so that large |z| cannot overflow.
    const Complex ep = std::exp((c + d) * t);
    const Complex em = std::exp((c - d) * t);
    ch = 0.5 * (ep + em);
    sh_over_d = (ep - em) / (2.0 * d);
  }
  const Complex a = ch - c * sh_over_d;
  Matrix2 out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out[i][j] = (sh_over_d * m[i][j]).real() + (i == j ? a.real() : 0.0);
    }
  }
  return out;
}

ModeState evolve_mode(const ModeState& m0, double t, const LinearParams& p) {
  if (t < 0.0) throw ContractError("evolve_mode: t must be nonnegative");
  if (t == 0.0) return m0;
  const Matrix2 e = mode_propagator(m0.k, t, p);
  return {m0.k, e[0][0] * m0.uhat + e[0][1] * m0.vhat, e[1][0] * m0.uhat + e[1][1] * m0.vhat};
}

std::vector<DispersionRow> dispersion_table(double kmax, double dk, const LinearParams& p) {
  if (!(dk > 0.0)) throw ContractError("dispersion_table: dk must be positive");
  std::vector<DispersionRow> rows;
  for (long i = 1;; ++i) {
    const double k = static_cast<double>(i) * dk;
    if (k > kmax * (1.0 + 1e-12)) break;
    const auto l = mode_eigenvalues(k, p);
    rows.push_back({k, l[0], l[1]});
  }
  return rows;
}

LinearCheck linear_regime_check(const GridSpec& grid, const ModelParams& params, int mode,
                                double epsilon, double t_end, double dt, Scheme scheme) {
  grid.validate();
  if (mode <= 0 || mode > grid.dealias_cutoff()) {
    throw ContractError("linear_regime_check: mode must lie in [1, dealias cutoff]");
  }
  const double unit = grid.wavenumber_unit();
  const double kx = unit * mode;
  State s;
  s.u.u1 = ScalarField::zeros(grid, Representation::real);
  s.u.u2 = ScalarField::sample(grid, [&](double x1, double) { return epsilon * std::sin(kx * x1); });
  s.tau = SymTensorField2::zeros(grid);
  s = as_spectral(s);

  auto coefficient = [&](const State& st) {
    const VectorField2 v = leray_project(divergence_tensor(st.tau));
    return ModeState{kx, st.u.u2.mode(mode, 0), v.u2.mode(mode, 0)};
  };

  const LinearParams lin = LinearParams::from(params);
  const ModeState m0 = coefficient(s);
  LinearCheck out;
  double worst_err = 0.0, scale = 0.0;
  auto compare = [&](const State& st) {
    const ModeState num = coefficient(st);
    const ModeState ref = evolve_mode(m0, st.t, lin);
    worst_err = std::max(worst_err, std::hypot(std::abs(num.uhat - ref.uhat),
                                               std::abs(num.vhat - ref.vhat)));
    scale = std::max(scale, std::hypot(std::abs(ref.uhat), std::abs(ref.vhat)));
    out.t.push_back(st.t);
    out.solver.push_back(num);
    out.oracle.push_back(ref);
  };

  StepperConfig cfg;
  cfg.dt = dt;
  cfg.scheme = scheme;
  cfg.t_end = t_end;
  RunHooks hooks;
  hooks.on_record = compare;
  run(s, params, cfg, hooks);
  out.max_deviation = scale > 0.0 ? worst_err / scale : worst_err;
  return out;
}

}  // namespace oldroyd::linear
