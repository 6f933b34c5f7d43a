#include "oldroyd/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oldroyd/errors.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd::lp {
namespace {

constexpr double kInner = 0.75;
constexpr double kOuter = 4.0 / 3.0;

double smooth_step(double x) {
  // 0 for x <= 0, 1 for x >= 1, C-infinity in between.
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

template <class Multiplier>
ScalarField apply_radial(const ScalarField& f, Multiplier&& m) {
  ScalarField out = as_spectral(f);
  const GridSpec& g = out.grid();
  auto data = out.spectral();
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double a = g.k1(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double b = g.k2(i2);
      data[static_cast<std::size_t>(i1) * cols + i2] *= m(std::sqrt(a * a + b * b));
    }
  }
  return out;
}

double sequence_norm(const std::vector<double>& terms, double r) {
  if (!(r >= 1.0)) throw ContractError("besov_norm: r must lie in [1, inf]");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double x : terms) m = std::max(m, x);
    return m;
  }
  double m = 0.0;
  for (double x : terms) m = std::max(m, x);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : terms) s += std::pow(x / m, r);
  return m * std::pow(s, 1.0 / r);
}

double block_lp(const std::vector<const ScalarField*>& blocks, std::span<const double> weights,
                double p) {
  const GridSpec& g = blocks.front()->grid();
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t c = 0; c < blocks.size(); ++c) {
      s += weights[c] * inner_product(*blocks[c], *blocks[c]);
    }
    return std::sqrt(std::max(0.0, s));
  }
  std::vector<ScalarField> real;
  real.reserve(blocks.size());
  for (const ScalarField* b : blocks) real.push_back(as_real(*b));
  std::vector<const ScalarField*> ptrs;
  for (const ScalarField& r : real) ptrs.push_back(&r);
  return lp_norm_of_magnitudes(pointwise_magnitude(ptrs, weights), g.cell_area(), p);
}

void require_same_grid(const DyadicPartition& part, const GridSpec& g) {
  if (!(part.grid() == g)) throw ContractError("partition was built for a different grid");
}

}  // namespace

DyadicPartition::DyadicPartition(const GridSpec& grid, TransitionProfile profile)
    : grid_(grid), profile_(profile) {
  grid_.validate();
  const double unit = grid_.wavenumber_unit();
  const double kmax = unit * (grid_.n / 2) * std::numbers::sqrt2;
  j_max_ = std::max(0, static_cast<int>(std::ceil(std::log2(kmax / kInner) - 1e-12)));
  j_min_ = static_cast<int>(std::floor(std::log2(kInner * unit) + 1e-12));
  if (j_max_ + 2 < 3) {
    throw ConfigError("grid too coarse for a dyadic partition: only " +
                      std::to_string(j_max_ + 2) + " shells fit");
  }
}

double DyadicPartition::chi(double r) const {
  r = std::abs(r);
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  const double x = (kOuter - r) / (kOuter - kInner);
  if (profile_ == TransitionProfile::raised_cosine) {
    return 0.5 * (1.0 - std::cos(std::numbers::pi * x));
  }
  return smooth_step(x);
}

double DyadicPartition::block_multiplier(int j, double r, bool homogeneous) const {
  if (j > j_max_) return 0.0;
  if (homogeneous) {
    if (j < j_min_) return 0.0;
    return phi(std::ldexp(r, -j));
  }
  if (j < -1) return 0.0;
  if (j == -1) return chi(r);
  return phi(std::ldexp(r, -j));
}

double DyadicPartition::low_pass_multiplier(int j, double r) const {
  if (j < 0) return 0.0;
  return chi(std::ldexp(r, -j));
}

DyadicPartition make_partition(const GridSpec& grid, TransitionProfile profile) {
  return DyadicPartition(grid, profile);
}

ScalarField dyadic_block(const DyadicPartition& part, const ScalarField& f, int j,
                         bool homogeneous) {
  require_same_grid(part, f.grid());
  const int lo = part.first_shell(homogeneous);
  if (j < lo || j > part.j_max()) return ScalarField::zeros(f.grid());
  return apply_radial(f, [&](double r) { return part.block_multiplier(j, r, homogeneous); });
}

ShellDecomposition decompose(const DyadicPartition& part, const ScalarField& f,
                             bool homogeneous) {
  ShellDecomposition d;
  d.homogeneous = homogeneous;
  const ScalarField fs = as_spectral(f);
  for (int j = part.first_shell(homogeneous); j <= part.j_max(); ++j) {
    d.blocks.emplace(j, dyadic_block(part, fs, j, homogeneous));
  }
  return d;
}

double besov_norm(const DyadicPartition& part, std::span<const ScalarField* const> components,
                  std::span<const double> weights, double s, double p, double r,
                  bool homogeneous) {
  if (!(p >= 1.0)) throw ContractError("besov_norm: p must lie in [1, inf]");
  if (components.empty()) return 0.0;
  std::vector<ScalarField> spectral;
  for (const ScalarField* c : components) {
    require_same_grid(part, c->grid());
    spectral.push_back(as_spectral(*c));
  }
  std::vector<double> terms;
  for (int j = part.first_shell(homogeneous); j <= part.j_max(); ++j) {
    std::vector<ScalarField> blocks;
    for (const ScalarField& c : spectral) blocks.push_back(dyadic_block(part, c, j, homogeneous));
    std::vector<const ScalarField*> ptrs;
    for (const ScalarField& b : blocks) ptrs.push_back(&b);
    terms.push_back(std::exp2(j * s) * block_lp(ptrs, weights, p));
  }
  return sequence_norm(terms, r);
}

double besov_norm(const DyadicPartition& part, const ScalarField& f, double s, double p,
                  double r, bool homogeneous) {
  const ScalarField* comps[] = {&f};
  const double w[] = {1.0};
  return besov_norm(part, comps, w, s, p, r, homogeneous);
}

double besov_norm(const DyadicPartition& part, const VectorField2& v, double s, double p,
                  double r, bool homogeneous) {
  const ScalarField* comps[] = {&v.u1, &v.u2};
  const double w[] = {1.0, 1.0};
  return besov_norm(part, comps, w, s, p, r, homogeneous);
}

double besov_norm(const DyadicPartition& part, const SymTensorField2& t, double s, double p,
                  double r, bool homogeneous) {
  const ScalarField* comps[] = {&t.t11, &t.t12, &t.t22};
  return besov_norm(part, comps, kTensorWeights, s, p, r, homogeneous);
}

BonyPieces bony_decomposition(const DyadicPartition& part, const ScalarField& u,
                              const ScalarField& v) {
  require_same_grid(part, u.grid());
  require_same_grid(part, v.grid());
  const GridSpec& g = u.grid();
  const int lo = -1, hi = part.j_max();
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);

  auto real_blocks = [&](const ScalarField& f) {
    const ScalarField fs = as_spectral(f);
    std::vector<ScalarField> out;
    out.reserve(count);
    for (int j = lo; j <= hi; ++j) out.push_back(to_real(dyadic_block(part, fs, j, false)));
    return out;
  };
  const std::vector<ScalarField> bu = real_blocks(u);
  const std::vector<ScalarField> bv = real_blocks(v);
  const std::size_t size = g.real_size();

  // T_a b = sum_{j >= 1} S_{j-1} a * Delta_j b with S_{j-1} a = sum_{k <= j-2} Delta_k a.
  auto para = [&](const std::vector<ScalarField>& ba, const std::vector<ScalarField>& bb) {
    ScalarField acc(g, Representation::real);
    AlignedVector<double> low(size, 0.0);
    auto out = acc.real();
    for (int j = 1; j <= hi; ++j) {
      auto add = ba[static_cast<std::size_t>(j - 2 - lo)].real();
      for (std::size_t i = 0; i < size; ++i) low[i] += add[i];
      auto d = bb[static_cast<std::size_t>(j - lo)].real();
      for (std::size_t i = 0; i < size; ++i) out[i] += low[i] * d[i];
    }
    ScalarField s = to_spectral(acc);
    dealias_in_place(s);
    return s;
  };

  ScalarField rem(g, Representation::real);
  auto out = rem.real();
  for (int k = lo; k <= hi; ++k) {
    auto a = bu[static_cast<std::size_t>(k - lo)].real();
    for (int j = std::max(lo, k - 1); j <= std::min(hi, k + 1); ++j) {
      auto b = bv[static_cast<std::size_t>(j - lo)].real();
      for (std::size_t i = 0; i < size; ++i) out[i] += a[i] * b[i];
    }
  }
  ScalarField r = to_spectral(rem);
  dealias_in_place(r);
  return {para(bu, bv), para(bv, bu), std::move(r)};
}

ScalarField paraproduct(const DyadicPartition& part, const ScalarField& u, const ScalarField& v) {
  return bony_decomposition(part, u, v).t_uv;
}

ScalarField remainder(const DyadicPartition& part, const ScalarField& u, const ScalarField& v) {
  return bony_decomposition(part, u, v).r;
}

ScalarField riesz_commutator(const VectorField2& u, const SymTensorField2& t) {
  const double div = l2_norm_spectral(divergence(u));
  const VectorField2 g1 = gradient(u.u1);
  const VectorField2 g2 = gradient(u.u2);
  const double grad = std::sqrt(inner_product(g1.u1, g1.u1) + inner_product(g1.u2, g1.u2) +
                                inner_product(g2.u1, g2.u1) + inner_product(g2.u2, g2.u2));
  if (div > 1e-10 * grad + 1e-300) {
    throw ContractError("riesz_commutator: velocity is not divergence-free");
  }
  const VectorField2 ur = as_real(u);
  ScalarField out = riesz_R(advect(ur, t));
  out -= advect(ur, riesz_R(t));
  return out;
}

double b0_infty1_norm(const DyadicPartition& part, const ScalarField& f) {
  return besov_norm(part, f, 0.0, kInfinity, 1.0, false);
}

double b0_infty1_norm(const DyadicPartition& part, const SymTensorField2& t) {
  return besov_norm(part, t, 0.0, kInfinity, 1.0, false);
}

}  // namespace oldroyd::lp
