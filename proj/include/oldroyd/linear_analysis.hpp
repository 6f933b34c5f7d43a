#pragma once

#include <array>
#include <vector>

#include "oldroyd/field.hpp"
#include "oldroyd/integrator.hpp"
#include "oldroyd/model.hpp"

namespace oldroyd::linear {

// Coefficients of the per-mode linearization about the rest state. A mode
// with wavenumber k evolves (u^, v^), v = P div tau, by
//
//   d/dt [u^]   [ -nu k^2            1           ] [u^]
//        [v^] = [ -(alpha/2) k^2     -a - mu k^2 ] [v^]
//
// using div D(u) = Lap u / 2 for divergence-free u. The defaults (alpha = 2,
// a = nu = 0, mu = 1) give the pair d_t u = P div tau,
// d_t P div tau - Lap P div tau = Lap u and the characteristic polynomial
// lambda^2 + k^2 lambda + k^2.
struct LinearParams {
  double a = 0.0;
  double mu = 1.0;
  double nu = 0.0;
  double alpha = 2.0;

  static LinearParams from(const ModelParams& p) { return {p.a, p.mu, p.nu, p.alpha}; }
};

using Matrix2 = std::array<std::array<double, 2>, 2>;
using CMatrix2 = std::array<std::array<Complex, 2>, 2>;

Matrix2 mode_matrix(double k, const LinearParams& p = {});

// Roots sorted by real part, largest first. Throws ContractError for k <= 0.
std::array<Complex, 2> mode_eigenvalues(double k, const LinearParams& p = {});

// exp(M t), valid through the repeated-root case.
Matrix2 mode_propagator(double k, double t, const LinearParams& p = {});

struct ModeState {
  double k = 1.0;
  Complex uhat;
  Complex vhat;
};

ModeState evolve_mode(const ModeState& m0, double t, const LinearParams& p = {});

struct DispersionRow {
  double k = 0.0;
  Complex lambda_plus;
  Complex lambda_minus;
};
// Rows for k = dk, 2 dk, ..., up to kmax.
std::vector<DispersionRow> dispersion_table(double kmax, double dk = 1.0,
                                            const LinearParams& p = {});

struct LinearCheck {
  double max_deviation = 0.0;
  // Times and (u^, v^) of the solver and the oracle at each comparison.
  std::vector<double> t;
  std::vector<ModeState> solver;
  std::vector<ModeState> oracle;
};

// Runs the nonlinear solver from u = epsilon (0, sin(k x1)) (k in units of
// 2 pi / L), tau = 0, and compares the (k, 0) coefficients of u2 and
// P div tau (second component) with evolve_mode at every step up to t_end.
// The deviation is max_t |solver - oracle| / max_t |oracle| with |.| the
// Euclidean norm of (u^, v^).
LinearCheck linear_regime_check(const GridSpec& grid, const ModelParams& params, int mode,
                                double epsilon, double t_end = 5.0, double dt = 5e-3,
                                Scheme scheme = Scheme::if_rk4);

}  // namespace oldroyd::linear
