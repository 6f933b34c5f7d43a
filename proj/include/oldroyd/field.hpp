#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "oldroyd/aligned.hpp"
#include "oldroyd/grid.hpp"

namespace oldroyd {

using Complex = std::complex<double>;

enum class Representation { real, spectral };

const char* to_string(Representation rep);

// Real scalar field on a periodic grid held either as samples or as the
// half-spectrum of its unnormalized forward DFT (zero mode = sum of samples,
// so a constant c maps to c * n^2).
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(const GridSpec& grid, Representation rep);

  static ScalarField zeros(const GridSpec& grid,
                           Representation rep = Representation::spectral) {
    return ScalarField(grid, rep);
  }
  // Samples f(x1, x2) at x = (i1, i2) * dx.
  static ScalarField sample(const GridSpec& grid,
                            const std::function<double(double, double)>& f);

  const GridSpec& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_real() const { return rep_ == Representation::real; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  // Throw ContractError when the representation does not match.
  std::span<double> real();
  std::span<const double> real() const;
  std::span<Complex> spectral();
  std::span<const Complex> spectral() const;

  double& at(int i1, int i2) { return real()[index(i1, i2)]; }
  double at(int i1, int i2) const { return real()[index(i1, i2)]; }
  Complex& mode(int i1, int i2) { return spectral()[spectral_index(i1, i2)]; }
  Complex mode(int i1, int i2) const {
    return spectral()[spectral_index(i1, i2)];
  }

  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * grid_.n + i2;
  }
  std::size_t spectral_index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * grid_.spectral_columns() + i2;
  }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  // this += s * other
  ScalarField& axpy(double s, const ScalarField& other);

 private:
  void require_same_layout(const ScalarField& other) const;

  GridSpec grid_{};
  Representation rep_ = Representation::spectral;
  AlignedVector<double> real_;
  AlignedVector<Complex> spectral_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

// Forward / inverse transforms. Throw ContractError if the input already has
// the target representation.
ScalarField to_spectral(const ScalarField& f);
ScalarField to_real(const ScalarField& f);
// Conversions that pass matching representations through unchanged.
ScalarField as_spectral(const ScalarField& f);
ScalarField as_real(const ScalarField& f);

struct VectorField2 {
  ScalarField u1;
  ScalarField u2;

  static VectorField2 zeros(const GridSpec& grid,
                            Representation rep = Representation::spectral) {
    return {ScalarField(grid, rep), ScalarField(grid, rep)};
  }
  const GridSpec& grid() const { return u1.grid(); }
  Representation representation() const { return u1.representation(); }
  std::array<ScalarField*, 2> components() { return {&u1, &u2}; }
  std::array<const ScalarField*, 2> components() const { return {&u1, &u2}; }

  VectorField2& operator+=(const VectorField2& o);
  VectorField2& operator-=(const VectorField2& o);
  VectorField2& operator*=(double s);
};

// Symmetric 2x2 tensor field; t21 is t12 by storage.
struct SymTensorField2 {
  ScalarField t11;
  ScalarField t12;
  ScalarField t22;

  static SymTensorField2 zeros(const GridSpec& grid,
                               Representation rep = Representation::spectral) {
    return {ScalarField(grid, rep), ScalarField(grid, rep),
            ScalarField(grid, rep)};
  }
  // g * Id
  static SymTensorField2 isotropic(const ScalarField& g);

  const GridSpec& grid() const { return t11.grid(); }
  Representation representation() const { return t11.representation(); }
  std::array<ScalarField*, 3> components() { return {&t11, &t12, &t22}; }
  std::array<const ScalarField*, 3> components() const {
    return {&t11, &t12, &t22};
  }

  SymTensorField2& operator+=(const SymTensorField2& o);
  SymTensorField2& operator-=(const SymTensorField2& o);
  SymTensorField2& operator*=(double s);
};

// Frobenius weight of each stored tensor component (t12 appears twice).
inline constexpr std::array<double, 3> kTensorWeights{1.0, 2.0, 1.0};

VectorField2 as_spectral(const VectorField2& v);
VectorField2 as_real(const VectorField2& v);
SymTensorField2 as_spectral(const SymTensorField2& t);
SymTensorField2 as_real(const SymTensorField2& t);

}  // namespace oldroyd
