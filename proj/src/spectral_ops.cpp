#include "oldroyd/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fft.hpp"
#include "oldroyd/errors.hpp"

namespace oldroyd {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw ContractError("operands live on different grids");
}

// Applies out(m) = symbol(i1, i2) * in(m) mode by mode.
template <class Symbol>
ScalarField apply_symbol(const ScalarField& f, Symbol&& symbol) {
  ScalarField out = as_spectral(f);
  const GridSpec& g = out.grid();
  auto data = out.spectral();
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < cols; ++i2) {
      data[static_cast<std::size_t>(i1) * cols + i2] *= symbol(i1, i2);
    }
  }
  return out;
}

}  // namespace

ScalarField partial1(const ScalarField& f) {
  const GridSpec& g = f.grid();
  return apply_symbol(f, [&](int i1, int) { return kI * g.k1_derivative(i1); });
}

ScalarField partial2(const ScalarField& f) {
  const GridSpec& g = f.grid();
  return apply_symbol(f, [&](int, int i2) { return kI * g.k2_derivative(i2); });
}

VectorField2 gradient(const ScalarField& f) { return {partial1(f), partial2(f)}; }

ScalarField divergence(const VectorField2& v) {
  require_same_grid(v.u1.grid(), v.u2.grid());
  return partial1(v.u1) + partial2(v.u2);
}

VectorField2 divergence_tensor(const SymTensorField2& t) {
  return {partial1(t.t11) + partial2(t.t12), partial1(t.t12) + partial2(t.t22)};
}

ScalarField curl2d(const VectorField2& v) {
  require_same_grid(v.u1.grid(), v.u2.grid());
  return partial1(v.u2) - partial2(v.u1);
}

ScalarField laplacian(const ScalarField& f) {
  const GridSpec& g = f.grid();
  return apply_symbol(f, [&](int i1, int i2) {
    const double a = g.k1(i1), b = g.k2(i2);
    return Complex(-(a * a + b * b), 0.0);
  });
}

ScalarField inverse_laplacian(const ScalarField& f) {
  const GridSpec& g = f.grid();
  return apply_symbol(f, [&](int i1, int i2) {
    const double a = g.k1(i1), b = g.k2(i2);
    const double k2 = a * a + b * b;
    return k2 > 0.0 ? Complex(-1.0 / k2, 0.0) : Complex(0.0, 0.0);
  });
}

VectorField2 laplacian(const VectorField2& v) { return {laplacian(v.u1), laplacian(v.u2)}; }

SymTensorField2 laplacian(const SymTensorField2& t) {
  return {laplacian(t.t11), laplacian(t.t12), laplacian(t.t22)};
}

VectorField2 leray_project(const VectorField2& v) {
  require_same_grid(v.u1.grid(), v.u2.grid());
  VectorField2 out{as_spectral(v.u1), as_spectral(v.u2)};
  const GridSpec& g = out.grid();
  auto a = out.u1.spectral();
  auto b = out.u2.spectral();
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.k1_derivative(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double k2 = g.k2_derivative(i2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const std::size_t idx = static_cast<std::size_t>(i1) * cols + i2;
      const Complex kv = (k1 * a[idx] + k2 * b[idx]) / kk;
      a[idx] -= k1 * kv;
      b[idx] -= k2 * kv;
    }
  }
  return out;
}

ScalarField riesz_R(const SymTensorField2& t) {
  return inverse_laplacian(curl2d(divergence_tensor(t)));
}

VectorField2 biot_savart(const ScalarField& omega, std::pair<double, double> mean_velocity) {
  const ScalarField w = as_spectral(omega);
  const GridSpec& g = w.grid();
  const double n2 = static_cast<double>(g.n) * g.n;
  const double m = w.spectral()[0].real() / n2;
  const double scale = std::max(1.0, l2_norm_spectral(w) / g.box_length);
  if (std::abs(m) > 1e-10 * scale) {
    throw MeanCompatibilityError("biot_savart: vorticity mean " + std::to_string(m) +
                                 " is incompatible with a periodic velocity");
  }
  // psi = (-|k~|^2)^{-1} w with the derivative wavevector, u = (-d2 psi, d1 psi).
  VectorField2 u = VectorField2::zeros(g);
  auto ws = w.spectral();
  auto a = u.u1.spectral();
  auto b = u.u2.spectral();
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double k1 = g.k1_derivative(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double k2 = g.k2_derivative(i2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const std::size_t idx = static_cast<std::size_t>(i1) * cols + i2;
      const Complex psi = -ws[idx] / kk;
      a[idx] = -kI * k2 * psi;
      b[idx] = kI * k1 * psi;
    }
  }
  a[0] = mean_velocity.first * n2;
  b[0] = mean_velocity.second * n2;
  return u;
}

void dealias_in_place(ScalarField& f) {
  const GridSpec& g = f.grid();
  const int cutoff = g.dealias_cutoff();
  auto data = f.spectral();
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const bool row_out = std::abs(g.mode_index(i1)) > cutoff;
    for (int i2 = 0; i2 < cols; ++i2) {
      const int m2 = (i2 == g.n / 2) ? g.n / 2 : i2;
      if (row_out || m2 > cutoff) data[static_cast<std::size_t>(i1) * cols + i2] = 0.0;
    }
  }
}

ScalarField dealias(const ScalarField& f) {
  if (!f.is_spectral()) throw ContractError("dealias: field must be spectral");
  ScalarField out = f;
  dealias_in_place(out);
  return out;
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  const ScalarField ra = as_real(a);
  const ScalarField rb = as_real(b);
  ScalarField prod(a.grid(), Representation::real);
  auto p = prod.real();
  auto x = ra.real();
  auto y = rb.real();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = x[i] * y[i];
  ScalarField out = to_spectral(prod);
  dealias_in_place(out);
  return out;
}

ScalarField advect(const VectorField2& u, const ScalarField& f) {
  require_same_grid(u.grid(), f.grid());
  const VectorField2 ur = as_real(u);
  const ScalarField d1 = to_real(partial1(f));
  const ScalarField d2 = to_real(partial2(f));
  ScalarField prod(f.grid(), Representation::real);
  auto p = prod.real();
  auto a = ur.u1.real();
  auto b = ur.u2.real();
  auto x = d1.real();
  auto y = d2.real();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[i] * x[i] + b[i] * y[i];
  ScalarField out = to_spectral(prod);
  dealias_in_place(out);
  return out;
}

SymTensorField2 advect(const VectorField2& u, const SymTensorField2& t) {
  const VectorField2 ur = as_real(u);
  return {advect(ur, t.t11), advect(ur, t.t12), advect(ur, t.t22)};
}

double mean(const ScalarField& f) {
  const GridSpec& g = f.grid();
  if (f.is_spectral()) return f.spectral()[0].real() / (static_cast<double>(g.n) * g.n);
  double s = 0.0;
  for (double x : f.real()) s += x;
  return s / static_cast<double>(g.real_size());
}

double inner_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  const ScalarField sa = as_spectral(a);
  const ScalarField sb = as_spectral(b);
  const GridSpec& g = a.grid();
  const int cols = g.spectral_columns();
  auto x = sa.spectral();
  auto y = sb.spectral();
  double s = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < cols; ++i2) {
      const std::size_t idx = static_cast<std::size_t>(i1) * cols + i2;
      s += g.column_weight(i2) * (x[idx].real() * y[idx].real() + x[idx].imag() * y[idx].imag());
    }
  }
  const double n2 = static_cast<double>(g.n) * g.n;
  return s * g.box_length * g.box_length / (n2 * n2);
}

double l2_norm_spectral(const ScalarField& f) {
  return std::sqrt(std::max(0.0, inner_product(f, f)));
}

double l2_norm_quadrature(const ScalarField& f) {
  const ScalarField r = as_real(f);
  double s = 0.0;
  for (double x : r.real()) s += x * x;
  return std::sqrt(s * r.grid().cell_area());
}

double weighted_energy(const ScalarField& f, int power) {
  const ScalarField sf = as_spectral(f);
  const GridSpec& g = sf.grid();
  const int cols = g.spectral_columns();
  auto x = sf.spectral();
  double s = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double a = g.k1(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double b = g.k2(i2);
      const double kk = a * a + b * b;
      double w = g.column_weight(i2);
      for (int p = 0; p < power; ++p) w *= kk;
      s += w * std::norm(x[static_cast<std::size_t>(i1) * cols + i2]);
    }
  }
  const double n2 = static_cast<double>(g.n) * g.n;
  return s * g.box_length * g.box_length / (n2 * n2);
}

double max_abs(const ScalarField& f) {
  const ScalarField r = as_real(f);
  double m = 0.0;
  for (double x : r.real()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oldroyd
