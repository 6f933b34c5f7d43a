#pragma once

#include <map>
#include <span>

#include "oldroyd/field.hpp"
#include "oldroyd/norms.hpp"

namespace oldroyd::lp {

enum class TransitionProfile {
  smooth_bump,     // C-infinity, built from exp(-1/x)
  raised_cosine,   // C^1 only, kept for comparison
};

// Radial partition of unity: chi = 1 on |xi| <= 3/4 and 0 on |xi| >= 4/3,
// phi(xi) = chi(xi/2) - chi(xi). The sum chi + sum_{j>=0} phi(2^-j .)
// telescopes to exactly 1 on every grid wavenumber.
//
// Nonhomogeneous shells run from -1 (the chi block) to j_max; homogeneous
// shells run from j_min (the lowest shell meeting 2 pi / L) to j_max.
class DyadicPartition {
 public:
  explicit DyadicPartition(const GridSpec& grid,
                           TransitionProfile profile = TransitionProfile::smooth_bump);

  const GridSpec& grid() const { return grid_; }
  TransitionProfile profile() const { return profile_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  double chi(double r) const;
  double phi(double r) const { return chi(0.5 * r) - chi(r); }
  // Multiplier of block j at radius r: chi(r) for j = -1 nonhomogeneous,
  // otherwise phi(2^-j r); zero outside the available range.
  double block_multiplier(int j, double r, bool homogeneous) const;
  // S_j = chi(2^-j .), the low-pass operator below shell j + 1.
  double low_pass_multiplier(int j, double r) const;

  int first_shell(bool homogeneous) const { return homogeneous ? j_min_ : -1; }

 private:
  GridSpec grid_;
  TransitionProfile profile_;
  int j_min_ = 0;
  int j_max_ = 0;
};

DyadicPartition make_partition(const GridSpec& grid,
                               TransitionProfile profile = TransitionProfile::smooth_bump);

struct ShellDecomposition {
  bool homogeneous = false;
  std::map<int, ScalarField> blocks;  // spectral
};

// Delta_j f (spectral). Shells outside the available range give a zero field.
ScalarField dyadic_block(const DyadicPartition& part, const ScalarField& f, int j,
                         bool homogeneous);
ShellDecomposition decompose(const DyadicPartition& part, const ScalarField& f,
                             bool homogeneous);

// || (2^{js} ||Delta_j f||_{L^p})_j ||_{l^r} over the available shells.
// p and r lie in [1, inf]; kInfinity means the supremum.
double besov_norm(const DyadicPartition& part, const ScalarField& f, double s, double p,
                  double r, bool homogeneous);
// Multi-component version: block L^p norms use the pointwise weighted
// Euclidean magnitude sqrt(sum_c w_c |Delta_j f_c|^2).
double besov_norm(const DyadicPartition& part, std::span<const ScalarField* const> components,
                  std::span<const double> weights, double s, double p, double r,
                  bool homogeneous);
double besov_norm(const DyadicPartition& part, const VectorField2& v, double s, double p,
                  double r, bool homogeneous);
double besov_norm(const DyadicPartition& part, const SymTensorField2& t, double s, double p,
                  double r, bool homogeneous);

// Bony decomposition uv = T_u v + T_v u + R(u, v) using nonhomogeneous
// blocks. Each piece is returned spectral and dealiased.
ScalarField paraproduct(const DyadicPartition& part, const ScalarField& u, const ScalarField& v);
ScalarField remainder(const DyadicPartition& part, const ScalarField& u, const ScalarField& v);

struct BonyPieces {
  ScalarField t_uv;
  ScalarField t_vu;
  ScalarField r;
};
BonyPieces bony_decomposition(const DyadicPartition& part, const ScalarField& u,
                              const ScalarField& v);

// [R, u.grad] t = R(u.grad t) - u.grad(R t). Throws ContractError when u is
// not divergence-free to 1e-10 relative to grad u.
ScalarField riesz_commutator(const VectorField2& u, const SymTensorField2& t);

// sum_j ||Delta_j f||_{L^inf} over the nonhomogeneous shells.
double b0_infty1_norm(const DyadicPartition& part, const ScalarField& f);
double b0_infty1_norm(const DyadicPartition& part, const SymTensorField2& t);

}  // namespace oldroyd::lp
