#pragma once

#include <string>

#include "oldroyd/field.hpp"

namespace oldroyd {

enum class RotationMode {
  // Q = tau Omega - Omega tau and no alpha D(u) source in the stress equation.
  corotation,
  // Q = tau Omega - Omega tau + b (D tau + tau D) with the alpha D(u) source.
  full,
};

const char* to_string(RotationMode mode);
RotationMode parse_rotation_mode(const std::string& text);

struct ModelParams {
  double a = 1.0;
  double mu = 1.0;
  double nu = 0.0;
  double alpha = 1.0;
  double b = 1.0;
  RotationMode rotation = RotationMode::corotation;

  // Throws ConfigError unless a, mu, nu >= 0, alpha > 0 and b in [-1, 1].
  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

struct State {
  double t = 0.0;
  VectorField2 u;
  SymTensorField2 tau;

  const GridSpec& grid() const { return u.grid(); }
};

// Time derivative (or any increment) of the unknowns.
struct StateRate {
  VectorField2 u;
  SymTensorField2 tau;
};

State as_spectral(const State& s);

// Symmetric part of grad u, with (grad u)_ij = d_j u_i.
SymTensorField2 deformation(const VectorField2& u);
// omega = d1 u2 - d2 u1; the antisymmetric part is Omega = [[0, -omega/2], [omega/2, 0]].
ScalarField vorticity_part(const VectorField2& u);
SymTensorField2 bilinear_Q(const VectorField2& u, const SymTensorField2& tau,
                           const ModelParams& params);

// P(-u.grad u + div tau) + nu Lap u
VectorField2 rhs_velocity(const State& s, const ModelParams& params);
// -u.grad tau - a tau - Q + alpha D(u) + mu Lap tau (alpha term only in full mode)
SymTensorField2 rhs_stress(const State& s, const ModelParams& params);
StateRate rhs(const State& s, const ModelParams& params);

// The right-hand side without the diagonal linear terms -nu|k|^2 on u and
// -a - mu|k|^2 on tau. All fields must be spectral; 15 inverse and 5
// forward transforms per call.
StateRate nonlinear_rhs(const State& s, const ModelParams& params);

// Mean-zero P with grad P equal to the part of div tau - u.grad u removed by
// the Leray projector.
ScalarField pressure_recover(const State& s, const ModelParams& params);

// mu omega - R tau
ScalarField gamma_field(const State& s, const ModelParams& params);

// L^2 norm of
//   d_t Gamma + u.grad Gamma - a R tau - R Q - [R, u.grad] tau
//     + (alpha/2) omega [full mode] - mu nu Lap omega,
// with d_t Gamma formed from the supplied rate. Vanishes up to the
// dealiasing error of the transport terms.
double gamma_residual(const State& s, const StateRate& ds, const ModelParams& params);

}  // namespace oldroyd
