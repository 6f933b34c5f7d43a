#include "oldroyd/field.hpp"

#include <string>

#include "fft.hpp"
#include "oldroyd/errors.hpp"

namespace oldroyd {

void GridSpec::validate() const {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw ConfigError("grid.n must be a power of two >= 16, got " +
                      std::to_string(n));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ConfigError("grid.box_length must be positive");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw ConfigError("grid.dealias_fraction must lie in (0, 1]");
  }
  if (dealias_cutoff() < 4) {
    throw ConfigError("dealias_fraction * n / 2 keeps fewer than 4 modes");
  }
}

const char* to_string(Representation rep) {
  return rep == Representation::real ? "real" : "spectral";
}

ScalarField::ScalarField(const GridSpec& grid, Representation rep)
    : grid_(grid), rep_(rep) {
  if (rep == Representation::real) {
    real_.assign(grid.real_size(), 0.0);
  } else {
    spectral_.assign(grid.spectral_size(), Complex{});
  }
}

ScalarField ScalarField::sample(const GridSpec& grid,
                                const std::function<double(double, double)>& f) {
  ScalarField out(grid, Representation::real);
  const double dx = grid.dx();
  for (int i1 = 0; i1 < grid.n; ++i1) {
    for (int i2 = 0; i2 < grid.n; ++i2) {
      out.real_[out.index(i1, i2)] = f(i1 * dx, i2 * dx);
    }
  }
  return out;
}

std::span<double> ScalarField::real() {
  if (rep_ != Representation::real) throw ContractError("field is not in real representation");
  return real_;
}
std::span<const double> ScalarField::real() const {
  if (rep_ != Representation::real) throw ContractError("field is not in real representation");
  return real_;
}
std::span<Complex> ScalarField::spectral() {
  if (rep_ != Representation::spectral) throw ContractError("field is not in spectral representation");
  return spectral_;
}
std::span<const Complex> ScalarField::spectral() const {
  if (rep_ != Representation::spectral) throw ContractError("field is not in spectral representation");
  return spectral_;
}

void ScalarField::require_same_layout(const ScalarField& other) const {
  if (!(grid_ == other.grid_)) throw ContractError("fields live on different grids");
  if (rep_ != other.rep_) throw ContractError("fields have different representations");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) { return axpy(1.0, other); }
ScalarField& ScalarField::operator-=(const ScalarField& other) { return axpy(-1.0, other); }

ScalarField& ScalarField::axpy(double s, const ScalarField& other) {
  require_same_layout(other);
  if (rep_ == Representation::real) {
    for (std::size_t i = 0; i < real_.size(); ++i) real_[i] += s * other.real_[i];
  } else {
    for (std::size_t i = 0; i < spectral_.size(); ++i) spectral_[i] += s * other.spectral_[i];
  }
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& x : real_) x *= s;
  for (Complex& z : spectral_) z *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField to_spectral(const ScalarField& f) {
  if (!f.is_real()) throw ContractError("to_spectral: field is already spectral");
  ScalarField out(f.grid(), Representation::spectral);
  fft::forward(f.grid().n, f.real(), out.spectral());
  return out;
}

ScalarField to_real(const ScalarField& f) {
  if (!f.is_spectral()) throw ContractError("to_real: field is already real");
  ScalarField out(f.grid(), Representation::real);
  fft::inverse(f.grid().n, f.spectral(), out.real());
  return out;
}

ScalarField as_spectral(const ScalarField& f) { return f.is_spectral() ? f : to_spectral(f); }
ScalarField as_real(const ScalarField& f) { return f.is_real() ? f : to_real(f); }

VectorField2& VectorField2::operator+=(const VectorField2& o) {
  u1 += o.u1;
  u2 += o.u2;
  return *this;
}
VectorField2& VectorField2::operator-=(const VectorField2& o) {
  u1 -= o.u1;
  u2 -= o.u2;
  return *this;
}
VectorField2& VectorField2::operator*=(double s) {
  u1 *= s;
  u2 *= s;
  return *this;
}

SymTensorField2 SymTensorField2::isotropic(const ScalarField& g) {
  return {g, ScalarField(g.grid(), g.representation()), g};
}

SymTensorField2& SymTensorField2::operator+=(const SymTensorField2& o) {
  t11 += o.t11;
  t12 += o.t12;
  t22 += o.t22;
  return *this;
}
SymTensorField2& SymTensorField2::operator-=(const SymTensorField2& o) {
  t11 -= o.t11;
  t12 -= o.t12;
  t22 -= o.t22;
  return *this;
}
SymTensorField2& SymTensorField2::operator*=(double s) {
  t11 *= s;
  t12 *= s;
  t22 *= s;
  return *this;
}

VectorField2 as_spectral(const VectorField2& v) { return {as_spectral(v.u1), as_spectral(v.u2)}; }
VectorField2 as_real(const VectorField2& v) { return {as_real(v.u1), as_real(v.u2)}; }
SymTensorField2 as_spectral(const SymTensorField2& t) {
  return {as_spectral(t.t11), as_spectral(t.t12), as_spectral(t.t22)};
}
SymTensorField2 as_real(const SymTensorField2& t) {
  return {as_real(t.t11), as_real(t.t12), as_real(t.t22)};
}

}  // namespace oldroyd
