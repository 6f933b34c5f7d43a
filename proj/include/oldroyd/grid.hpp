#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace oldroyd {

// Periodic square box [0, L)^2 sampled on n x n points.
//
// Spectral coefficients use the real-to-complex half layout: index (i1, i2)
// with i1 in [0, n) and i2 in [0, n/2], stored row-major with n/2+1 columns.
// Integer wavenumbers follow m = i for i < n/2 and m = i - n otherwise, so the
// unpaired Nyquist index i = n/2 carries m = -n/2.
struct GridSpec {
  int n = 64;
  double box_length = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;

  // Throws ConfigError when the invariants do not hold.
  void validate() const;

  std::size_t real_size() const { return static_cast<std::size_t>(n) * n; }
  int spectral_columns() const { return n / 2 + 1; }
  std::size_t spectral_size() const {
    return static_cast<std::size_t>(n) * spectral_columns();
  }

  double dx() const { return box_length / n; }
  double cell_area() const { return dx() * dx(); }
  double wavenumber_unit() const { return 2.0 * std::numbers::pi / box_length; }

  // Largest |m| kept by the dealiasing filter.
  int dealias_cutoff() const {
    return static_cast<int>(std::floor(dealias_fraction * n / 2 + 1e-12));
  }

  int mode_index(int i) const { return i < n / 2 ? i : i - n; }
  bool is_nyquist(int i) const { return i == n / 2; }

  double k1(int i1) const { return wavenumber_unit() * mode_index(i1); }
  // Columns never exceed n/2; the last column is the Nyquist column.
  double k2(int i2) const {
    return wavenumber_unit() * (i2 == n / 2 ? -n / 2 : i2);
  }
  // Wavenumbers used by first derivatives: zero on Nyquist rows/columns.
  double k1_derivative(int i1) const { return is_nyquist(i1) ? 0.0 : k1(i1); }
  double k2_derivative(int i2) const { return is_nyquist(i2) ? 0.0 : k2(i2); }

  // Weight of a stored half-spectrum column in full-spectrum sums.
  double column_weight(int i2) const {
    return (i2 == 0 || i2 == n / 2) ? 1.0 : 2.0;
  }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace oldroyd
