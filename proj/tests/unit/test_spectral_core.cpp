#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "oldroyd/errors.hpp"
#include "oldroyd/snapshot.hpp"
#include "oldroyd/spectral_ops.hpp"
#include "support/oracles.hpp"

using namespace oldroyd;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec grid(int n = 32, double L = 2.0 * kPi) { return GridSpec{n, L, 2.0 / 3.0}; }

ScalarField random_real(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ScalarField f(g, Representation::real);
  for (double& x : f.real()) x = d(rng);
  return f;
}

VectorField2 random_vector(const GridSpec& g, std::uint64_t seed) {
  return {random_real(g, seed), random_real(g, seed + 1)};
}

double vec_diff(const VectorField2& a, const VectorField2& b) {
  return std::max(oracle::max_diff(a.u1, b.u1), oracle::max_diff(a.u2, b.u2));
}

}  // namespace

TEST(Grid, ValidationRejectsBadShapes) {
  EXPECT_THROW((GridSpec{15, 1.0, 2.0 / 3.0}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{8, 1.0, 2.0 / 3.0}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{48, 1.0, 2.0 / 3.0}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{32, -1.0, 2.0 / 3.0}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{16, 1.0, 0.2}.validate()), ConfigError);
  EXPECT_NO_THROW(grid(16).validate());
}

TEST(Grid, WavenumberLayout) {
  const GridSpec g = grid(16, 4.0 * kPi);
  EXPECT_DOUBLE_EQ(g.wavenumber_unit(), 0.5);
  EXPECT_DOUBLE_EQ(g.k1(3), 1.5);
  EXPECT_DOUBLE_EQ(g.k1(15), -0.5);
  EXPECT_DOUBLE_EQ(g.k1(8), -4.0);
  EXPECT_DOUBLE_EQ(g.k1_derivative(8), 0.0);
  EXPECT_DOUBLE_EQ(g.k2(8), -4.0);
  EXPECT_EQ(g.dealias_cutoff(), 5);
}

TEST(Transform, ConstantMapsToScaledZeroMode) {
  const GridSpec g = grid(16);
  const ScalarField f = to_spectral(ScalarField::sample(g, [](double, double) { return 2.5; }));
  EXPECT_NEAR(f.mode(0, 0).real(), 2.5 * 16 * 16, 1e-10);
  double rest = 0.0;
  for (std::size_t i = 1; i < f.spectral().size(); ++i) rest += std::abs(f.spectral()[i]);
  EXPECT_LT(rest, 1e-10);
}

TEST(Transform, SingleCosineHasTwoCoefficients) {
  const GridSpec g = grid(32, 3.0);
  const ScalarField f = to_spectral(
      ScalarField::sample(g, [&](double x1, double) { return std::cos(2.0 * kPi * x1 / 3.0); }));
  int nonzero = 0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.spectral_columns(); ++i2) {
      if (std::abs(f.mode(i1, i2)) > 1e-9) {
        ++nonzero;
        EXPECT_EQ(i2, 0);
        EXPECT_EQ(std::abs(g.mode_index(i1)), 1);
      }
    }
  }
  // The half spectrum holds both m = (1, 0) and m = (-1, 0) in column 0.
  EXPECT_EQ(nonzero, 2);
}

TEST(Transform, RoundTripAndRepresentationContract) {
  const GridSpec g = grid(32);
  const ScalarField f = random_real(g, 3);
  const ScalarField back = to_real(to_spectral(f));
  EXPECT_LT(oracle::max_diff(f, back) / oracle::max_abs_value(f), 1e-12);
  EXPECT_THROW(to_real(f), ContractError);
  EXPECT_THROW(to_spectral(to_spectral(f)), ContractError);
  EXPECT_THROW(f.spectral(), ContractError);
}

TEST(Operators, GradientOfProductOfSines) {
  const GridSpec g = grid(32);
  const ScalarField f = ScalarField::sample(g, [](double x1, double x2) { return std::sin(x1) * std::sin(x2); });
  const VectorField2 grad = gradient(f);
  EXPECT_LT(oracle::max_error(grad.u1, [](double x1, double x2) { return std::cos(x1) * std::sin(x2); }), 1e-12);
  EXPECT_LT(oracle::max_error(grad.u2, [](double x1, double x2) { return std::sin(x1) * std::cos(x2); }), 1e-12);

  const VectorField2 g1 = gradient(ScalarField::sample(g, [](double x1, double) { return std::sin(x1); }));
  EXPECT_LT(oracle::max_error(g1.u1, [](double x1, double) { return std::cos(x1); }), 1e-12);
  EXPECT_LT(oracle::max_abs_value(g1.u2), 1e-12);

  const VectorField2 g0 = gradient(ScalarField::sample(g, [](double, double) { return 4.0; }));
  EXPECT_LT(oracle::max_abs_value(g0.u1) + oracle::max_abs_value(g0.u2), 1e-12);
}

TEST(Operators, NyquistDerivativeIsZero) {
  const GridSpec g = grid(16);
  const ScalarField f = ScalarField::sample(g, [&](double x1, double) { return std::cos(8.0 * x1); });
  EXPECT_LT(oracle::max_abs_value(partial1(f)), 1e-12);
}

TEST(Operators, GradientMatchesTrigOracle) {
  const GridSpec g = grid(32, 5.0);
  const oracle::TrigPoly p = oracle::random_poly(g.wavenumber_unit(), 10, 25, 11);
  const VectorField2 grad = gradient(oracle::sample(g, p));
  const double scale = 1.0 + oracle::max_abs_value(grad.u1);
  EXPECT_LT(oracle::max_error(grad.u1, [&](double a, double b) { return p.derivative(1, 0, a, b); }) / scale, 1e-12);
  EXPECT_LT(oracle::max_error(grad.u2, [&](double a, double b) { return p.derivative(0, 1, a, b); }) / scale, 1e-12);
}

TEST(Operators, DivergenceTensorExamples) {
  const GridSpec g = grid(32);
  const ScalarField gfun = ScalarField::sample(g, [](double x1, double x2) { return std::sin(x1 + 2 * x2) + std::cos(x2); });
  const VectorField2 d = divergence_tensor(SymTensorField2::isotropic(gfun));
  EXPECT_LT(vec_diff(d, gradient(gfun)), 1e-12);

  const ScalarField zero = ScalarField::zeros(g, Representation::real);
  const ScalarField c = ScalarField::sample(g, [](double x1, double) { return std::cos(x1); });
  const VectorField2 d2 = divergence_tensor({zero, c, zero});
  EXPECT_LT(oracle::max_abs_value(d2.u1), 1e-12);
  EXPECT_LT(oracle::max_error(d2.u2, [](double x1, double) { return -std::sin(x1); }), 1e-12);

  const ScalarField k = ScalarField::sample(g, [](double, double) { return 3.0; });
  const VectorField2 d3 = divergence_tensor({k, k, k});
  EXPECT_LT(oracle::max_abs_value(d3.u1) + oracle::max_abs_value(d3.u2), 1e-12);
}

TEST(Operators, CurlExamples) {
  const GridSpec g = grid(32);
  const ScalarField zero = ScalarField::zeros(g, Representation::real);
  const ScalarField s1 = ScalarField::sample(g, [](double x1, double) { return std::sin(x1); });
  EXPECT_LT(oracle::max_error(curl2d({zero, s1}), [](double x1, double) { return std::cos(x1); }), 1e-12);

  const ScalarField m = ScalarField::sample(g, [](double, double x2) { return -std::sin(x2); });
  EXPECT_LT(oracle::max_error(curl2d({m, s1}), [](double x1, double x2) { return std::cos(x1) + std::cos(x2); }), 1e-12);

  const ScalarField r = random_real(g, 5);
  EXPECT_LT(oracle::max_abs_value(curl2d(gradient(r))), 1e-12 * oracle::max_abs_value(r) * g.n);
}

TEST(Operators, LerayProjection) {
  const GridSpec g = grid(32);
  const VectorField2 v = random_vector(g, 7);
  const VectorField2 pv = leray_project(v);
  const double scale = oracle::max_abs_value(v.u1);
  EXPECT_LT(oracle::max_abs_value(divergence(pv)), 1e-12 * scale * g.n);
  EXPECT_LT(vec_diff(leray_project(pv), pv), 1e-12 * scale);

  // Gradients of mean-zero functions are annihilated.
  ScalarField gfun = random_real(g, 9);
  EXPECT_LT(vec_diff(leray_project(gradient(gfun)), VectorField2::zeros(g)), 1e-12 * g.n);

  // Single mode k = (1, 0) with v^ = (1, 1) projects to (0, 1).
  VectorField2 m = VectorField2::zeros(g);
  m.u1.mode(1, 0) = 1.0;
  m.u2.mode(1, 0) = 1.0;
  const VectorField2 pm = leray_project(m);
  EXPECT_LT(std::abs(pm.u1.mode(1, 0)), 1e-15);
  EXPECT_LT(std::abs(pm.u2.mode(1, 0) - 1.0), 1e-15);

  // Zero mode passes through.
  VectorField2 c = VectorField2::zeros(g);
  c.u1.mode(0, 0) = 5.0;
  EXPECT_DOUBLE_EQ(leray_project(c).u1.mode(0, 0).real(), 5.0);
}

TEST(Operators, RieszExamplesAndDefinition) {
  const GridSpec g = grid(32);
  const ScalarField zero = ScalarField::zeros(g, Representation::real);
  const ScalarField c = ScalarField::sample(g, [](double x1, double) { return std::cos(x1); });
  EXPECT_LT(oracle::max_error(riesz_R({zero, c, zero}), [](double x1, double) { return std::cos(x1); }), 1e-12);

  const ScalarField r = random_real(g, 13);
  EXPECT_LT(oracle::max_abs_value(riesz_R(SymTensorField2::isotropic(r))), 1e-12 * g.n);
  EXPECT_LT(oracle::max_abs_value(riesz_R({zero, zero, zero})), 1e-300);

  const SymTensorField2 t{random_real(g, 21), random_real(g, 22), random_real(g, 23)};
  const ScalarField direct = inverse_laplacian(curl2d(divergence_tensor(t)));
  EXPECT_LT(oracle::max_diff(riesz_R(t), direct), 1e-12);
  EXPECT_LT(std::abs(mean(riesz_R(t))), 1e-14);
}

TEST(Operators, BiotSavartExamples) {
  const GridSpec g = grid(32);
  const ScalarField w = ScalarField::sample(g, [](double x1, double) { return std::cos(x1); });
  const VectorField2 u = biot_savart(w);
  EXPECT_LT(oracle::max_abs_value(u.u1), 1e-12);
  EXPECT_LT(oracle::max_error(u.u2, [](double x1, double) { return std::sin(x1); }), 1e-12);

  const VectorField2 c = biot_savart(ScalarField::zeros(g), {0.3, -2.0});
  EXPECT_LT(oracle::max_error(c.u1, [](double, double) { return 0.3; }), 1e-14);
  EXPECT_LT(oracle::max_error(c.u2, [](double, double) { return -2.0; }), 1e-14);

  VectorField2 v = leray_project(random_vector(g, 31));
  v.u1 = dealias(v.u1);
  v.u2 = dealias(v.u2);
  v.u1.mode(0, 0) = 0.0;
  v.u2.mode(0, 0) = 0.0;
  const VectorField2 back = biot_savart(curl2d(v));
  EXPECT_LT(vec_diff(back, v), 1e-12 * oracle::max_abs_value(v.u1));
  EXPECT_LT(oracle::max_diff(curl2d(back), curl2d(v)), 1e-11);
  EXPECT_LT(oracle::max_abs_value(divergence(back)), 1e-11);

  const ScalarField offset = ScalarField::sample(g, [](double x1, double) { return 1.0 + std::cos(x1); });
  EXPECT_THROW(biot_savart(offset), MeanCompatibilityError);
}

TEST(Operators, DealiasFilter) {
  const GridSpec g = grid(32);
  const oracle::TrigPoly p = oracle::random_poly(g.wavenumber_unit(), g.dealias_cutoff(), 20, 41);
  const ScalarField f = oracle::sample(g, p);
  EXPECT_LT(oracle::max_diff(dealias(to_spectral(f)), f), 1e-12);

  const ScalarField nyq = ScalarField::sample(g, [](double x1, double x2) { return std::cos(16 * x1) + std::cos(16 * x2); });
  EXPECT_LT(oracle::max_abs_value(dealias(to_spectral(nyq))), 1e-14);
}

TEST(Operators, DealiasedProductMatchesExactProduct) {
  // Squared highest mode: the full product aliases back into the grid band.
  const GridSpec g = grid(32);
  const int m = g.n / 2 - 1;
  const ScalarField naive = to_spectral(ScalarField::sample(g, [&](double x1, double) { return std::sin(m * x1) * std::sin(m * x1); }));
  // Without padding, 2m wraps to a low mode and survives the filter.
  EXPECT_GT(oracle::max_error(dealias(naive), [](double, double) { return 0.5; }), 0.4);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const oracle::TrigPoly a = oracle::random_poly(g.wavenumber_unit(), g.dealias_cutoff(), 15, 100 + seed, true);
    const oracle::TrigPoly b = oracle::random_poly(g.wavenumber_unit(), g.dealias_cutoff(), 15, 200 + seed, true);
    const oracle::TrigPoly ab = oracle::truncate(oracle::product(a, b), g.dealias_cutoff());
    const ScalarField got = dealiased_product(oracle::sample(g, a), oracle::sample(g, b));
    EXPECT_LT(oracle::max_error(got, ab) / (1.0 + oracle::max_abs_value(got)), 1e-12) << seed;
  }
}

TEST(Operators, ParsevalAndInnerProduct) {
  const GridSpec g = grid(32, 7.0);
  const ScalarField f = random_real(g, 51);
  EXPECT_NEAR(l2_norm_spectral(f) / l2_norm_quadrature(f), 1.0, 1e-12);
  const ScalarField h = random_real(g, 52);
  double direct = 0.0;
  for (std::size_t i = 0; i < f.real().size(); ++i) direct += f.real()[i] * h.real()[i];
  direct *= g.cell_area();
  EXPECT_NEAR(inner_product(f, h), direct, 1e-12 * std::abs(direct) + 1e-12);
}

TEST(Operators, WeightedEnergyOfSingleMode) {
  const GridSpec g = grid(32, 2.0 * kPi);
  const ScalarField f = ScalarField::sample(g, [](double x1, double x2) { return std::sin(3 * x1 + 4 * x2); });
  // ||f||^2 = 2 pi^2, |k|^2 = 25
  EXPECT_NEAR(weighted_energy(f, 0), 2 * kPi * kPi, 1e-10);
  EXPECT_NEAR(weighted_energy(f, 1), 25 * 2 * kPi * kPi, 1e-9);
  EXPECT_NEAR(weighted_energy(f, 2), 625 * 2 * kPi * kPi, 1e-7);
}

TEST(Operators, AdvectMatchesTrigOracle) {
  const GridSpec g = grid(32);
  const int half = g.dealias_cutoff() / 2;
  const oracle::StreamVelocity sv{oracle::random_poly(1.0, half, 6, 61)};
  const oracle::TrigPoly f = oracle::random_poly(1.0, half, 6, 62);
  const VectorField2 u{oracle::sample_fn(g, [&](double a, double b) { return sv.u1(a, b); }),
                       oracle::sample_fn(g, [&](double a, double b) { return sv.u2(a, b); })};
  const ScalarField got = advect(u, oracle::sample(g, f));
  const double err = oracle::max_error(got, [&](double a, double b) {
    return sv.u1(a, b) * f.derivative(1, 0, a, b) + sv.u2(a, b) * f.derivative(0, 1, a, b);
  });
  EXPECT_LT(err / oracle::max_abs_value(got), 1e-12);
}

TEST(Snapshot, RoundTripBothRepresentations) {
  const GridSpec g = grid(16, 3.5);
  Snapshot s;
  s.grid = g;
  s.t = 1.25;
  s.names = {"a", "b"};
  s.components = {random_real(g, 71), random_real(g, 72)};
  const auto dir = std::filesystem::temp_directory_path() / "oldroyd_snapshot_test";
  std::filesystem::create_directories(dir);
  for (Representation rep : {Representation::real, Representation::spectral}) {
    const auto path = dir / (std::string("s_") + to_string(rep) + ".bin");
    write_snapshot(path, s, rep);
    const Snapshot back = read_snapshot(path);
    EXPECT_EQ(back.grid, g);
    EXPECT_EQ(back.t, 1.25);
    EXPECT_EQ(back.names, s.names);
    EXPECT_LT(oracle::max_diff(back.component("b"), s.components[1]), 1e-12);
  }
  std::filesystem::remove_all(dir);
}
