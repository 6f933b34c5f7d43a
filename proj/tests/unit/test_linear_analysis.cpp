#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oldroyd/errors.hpp"
#include "oldroyd/linear_analysis.hpp"

using namespace oldroyd;
using namespace oldroyd::linear;

namespace {

Matrix2 mul(const Matrix2& a, const Matrix2& b) {
  Matrix2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// Scaling and squaring with a long Taylor series.
Matrix2 expm(Matrix2 m, double t) {
  int squarings = 0;
  double norm = 0.0;
  for (auto& row : m)
    for (double& v : row) {
      v *= t;
      norm = std::max(norm, std::abs(v));
    }
  while (norm > 0.1) {
    norm /= 2;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& row : m)
    for (double& v : row) v *= scale;
  Matrix2 result{{{1, 0}, {0, 1}}}, term = result;
  for (int n = 1; n < 30; ++n) {
    term = mul(term, m);
    for (auto& row : term)
      for (double& v : row) v /= n;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) result[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

double max_diff(const Matrix2& a, const Matrix2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

}  // namespace

TEST(Dispersion, RootExamples) {
  const auto r1 = mode_eigenvalues(1.0);
  EXPECT_NEAR(r1[0].real(), -0.5, 1e-14);
  EXPECT_NEAR(std::abs(r1[0].imag()), std::sqrt(3.0) / 2, 1e-14);
  EXPECT_NEAR(r1[1].imag(), -r1[0].imag(), 1e-14);

  const auto r2 = mode_eigenvalues(2.0);
  EXPECT_NEAR(r2[0].real(), -2.0, 1e-7);
  EXPECT_NEAR(r2[1].real(), -2.0, 1e-7);
  EXPECT_NEAR(r2[0].imag(), 0.0, 1e-7);

  const auto r10 = mode_eigenvalues(10.0);
  EXPECT_NEAR(r10[0].real(), -1.0102, 1e-4);
  EXPECT_NEAR(r10[1].real(), -98.9898, 1e-4);
  EXPECT_GE(r10[0].real(), r10[1].real());

  EXPECT_THROW(mode_eigenvalues(0.0), ContractError);
}

TEST(Dispersion, SumAndProductIdentities) {
  for (const auto& row : dispersion_table(20.0, 0.25)) {
    const double k2 = row.k * row.k;
    const Complex sum = row.lambda_plus + row.lambda_minus;
    const Complex prod = row.lambda_plus * row.lambda_minus;
    EXPECT_NEAR(sum.real(), -k2, 1e-12 * std::max(1.0, k2)) << row.k;
    EXPECT_NEAR(sum.imag(), 0.0, 1e-12 * std::max(1.0, k2));
    EXPECT_NEAR(prod.real(), k2, 1e-12 * std::max(1.0, k2 * k2)) << row.k;
    EXPECT_NEAR(prod.imag(), 0.0, 1e-12 * std::max(1.0, k2 * k2));
  }
  EXPECT_EQ(dispersion_table(5.0).size(), 5u);
}

TEST(Dispersion, GeneralParametersMatchMatrix) {
  const LinearParams p{0.3, 0.7, 0.2, 1.5};
  for (double k : {0.5, 1.0, 3.0}) {
    const Matrix2 m = mode_matrix(k, p);
    const auto r = mode_eigenvalues(k, p);
    const Complex tr = m[0][0] + m[1][1];
    const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    EXPECT_LT(std::abs(r[0] + r[1] - tr), 1e-12);
    EXPECT_LT(std::abs(r[0] * r[1] - det), 1e-12);
  }
}

TEST(Propagator, MatchesMatrixExponential) {
  for (const LinearParams& p : {LinearParams{}, LinearParams{0.3, 0.7, 0.2, 1.5}}) {
    for (double k : {0.5, 1.0, 2.0, 3.0, 7.0}) {
      for (double t : {0.0, 0.1, 1.0, 3.7}) {
        EXPECT_LT(max_diff(mode_propagator(k, t, p), expm(mode_matrix(k, p), t)), 1e-12)
            << k << " " << t;
      }
    }
  }
}

TEST(Propagator, IdentitySemigroupAndDecay) {
  EXPECT_EQ(max_diff(mode_propagator(1.5, 0.0), Matrix2{{{1, 0}, {0, 1}}}), 0.0);
  for (double k : {1.0, 2.0, 4.0}) {
    const Matrix2 ab = mul(mode_propagator(k, 0.4), mode_propagator(k, 0.9));
    EXPECT_LT(max_diff(ab, mode_propagator(k, 1.3)), 1e-13);
  }
  // At k = 1 every solution carries the factor e^{-t/2}.
  const ModeState m0{1.0, Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  const ModeState m = evolve_mode(m0, 10.0);
  const double size = std::hypot(std::abs(m.uhat), std::abs(m.vhat));
  EXPECT_LT(size, 2.0 * std::exp(-5.0));
  EXPECT_GT(size, 0.1 * std::exp(-5.0));
}

TEST(LinearRegime, SolverTracksOracle) {
  const GridSpec g{32, 2 * std::numbers::pi, 2.0 / 3.0};
  ModelParams p;
  p.rotation = RotationMode::full;
  p.a = 0.0;
  p.nu = 0.0;
  p.alpha = 2.0;
  p.mu = 1.0;
  EXPECT_EQ(linear_regime_check(g, p, 1, 0.0, 1.0).max_deviation, 0.0);
  for (int k : {1, 2}) {
    const LinearCheck c = linear_regime_check(g, p, k, 1e-6, 5.0);
    EXPECT_LE(c.max_deviation, 1e-4) << k;
    EXPECT_EQ(c.t.size(), c.solver.size());
    EXPECT_EQ(c.t.size(), c.oracle.size());
  }
}
