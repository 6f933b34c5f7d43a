#include "oldroyd/generators.hpp"

#include <cmath>
#include <random>

#include "oldroyd/errors.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {
namespace {

using Params = std::map<std::string, double>;

const std::map<std::string, Params>& defaults_table() {
  static const std::map<std::string, Params> table{
      {"taylor_green", {{"amplitude", 1.0}, {"k", 1.0}}},
      {"localized_vortex", {{"amplitude", 1.0}, {"width", 0.5}}},
      {"localized_isotropic_tau", {{"amplitude", 1.0}, {"width", 0.5}}},
      {"random_band", {{"amplitude_u", 1.0}, {"amplitude_tau", 1.0}, {"k_min", 1.0}, {"k_max", 4.0}}},
      {"single_mode", {{"epsilon", 1e-8}, {"tau_epsilon", 0.0}, {"k", 1.0}}},
      {"constant_tau", {{"value", 1.0}}},
  };
  return table;
}

Params resolve(const GeneratorSpec& spec) {
  Params p = generator_defaults(spec.name);
  for (const auto& [key, value] : spec.params) {
    if (!p.count(key)) {
      throw ConfigError("generator '" + spec.name + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) {
      throw ConfigError("generator '" + spec.name + "' parameter '" + key + "' is not finite");
    }
    p[key] = value;
  }
  return p;
}

int integer_param(const Params& p, const std::string& key, const std::string& gen) {
  const double v = p.at(key);
  if (v != std::round(v)) throw ConfigError(gen + "." + key + " must be an integer");
  return static_cast<int>(v);
}

// exp(-r^2/w^2) about the box centre, with width checks.
ScalarField gaussian(const GridSpec& g, double width, const std::string& gen) {
  if (!(width > 0.0)) throw ConfigError(gen + ".width must be positive");
  if (width / g.dx() < 4.0) {
    throw ResolutionError(gen + ": width " + std::to_string(width) + " spans fewer than 4 grid points (dx = " +
                          std::to_string(g.dx()) + ")");
  }
  const double half = 0.5 * g.box_length;
  if (std::exp(-half * half / (width * width)) > 1e-12) {
    throw ConfigError(gen + ": width " + std::to_string(width) +
                      " is too wide for the profile to vanish at the box boundary (need width <= " +
                      std::to_string(half / std::sqrt(12.0 * std::log(10.0))) + ")");
  }
  return ScalarField::sample(g, [&](double x1, double x2) {
    const double r2 = (x1 - half) * (x1 - half) + (x2 - half) * (x2 - half);
    return std::exp(-r2 / (width * width));
  });
}

ScalarField random_band_field(const GridSpec& g, std::mt19937_64& rng, double kmin, double kmax) {
  std::normal_distribution<double> normal;
  ScalarField f = ScalarField::zeros(g);
  auto data = f.spectral();
  const int cols = g.spectral_columns();
  for (int i1 = 0; i1 < g.n; ++i1) {
    const double m1 = g.mode_index(i1);
    for (int i2 = 0; i2 < cols; ++i2) {
      const double m2 = i2;
      const double m = std::sqrt(m1 * m1 + m2 * m2);
      const double re = normal(rng);
      const double im = normal(rng);
      if (m < kmin || m > kmax) continue;
      data[static_cast<std::size_t>(i1) * cols + i2] = Complex(re, im);
    }
  }
  // The round trip restores Hermitian symmetry on the self-conjugate column.
  return to_spectral(to_real(f));
}

void add_taylor_green(State& s, const Params& p) {
  const GridSpec& g = s.grid();
  const double a = p.at("amplitude");
  const double k = integer_param(p, "k", "taylor_green") * g.wavenumber_unit();
  s.u.u1 += ScalarField::sample(g, [&](double x1, double x2) { return a * std::sin(k * x1) * std::cos(k * x2); });
  s.u.u2 += ScalarField::sample(g, [&](double x1, double x2) { return -a * std::cos(k * x1) * std::sin(k * x2); });
}

void add_localized_vortex(State& s, const Params& p) {
  ScalarField psi = gaussian(s.grid(), p.at("width"), "localized_vortex");
  psi *= p.at("amplitude");
  const ScalarField ps = to_spectral(psi);
  s.u.u1 += to_real(partial2(ps));
  ScalarField d1 = to_real(partial1(ps));
  d1 *= -1.0;
  s.u.u2 += d1;
}

void add_isotropic_tau(State& s, const Params& p) {
  ScalarField g = gaussian(s.grid(), p.at("width"), "localized_isotropic_tau");
  g *= p.at("amplitude");
  s.tau.t11 += g;
  s.tau.t22 += g;
}

void add_random_band(State& s, const Params& p, std::mt19937_64& rng) {
  const GridSpec& g = s.grid();
  const double kmin = p.at("k_min"), kmax = p.at("k_max");
  if (!(kmin >= 1.0 && kmax >= kmin)) throw ConfigError("random_band needs 1 <= k_min <= k_max");
  if (kmax > g.dealias_cutoff()) throw ConfigError("random_band.k_max exceeds the dealiasing cutoff");
  const ScalarField psi = random_band_field(g, rng, kmin, kmax);
  VectorField2 u{partial2(psi), partial1(psi)};
  u.u2 *= -1.0;
  const double un = std::sqrt(inner_product(u.u1, u.u1) + inner_product(u.u2, u.u2));
  if (un > 0.0) u *= p.at("amplitude_u") / un;
  SymTensorField2 t{random_band_field(g, rng, kmin, kmax), random_band_field(g, rng, kmin, kmax),
                    random_band_field(g, rng, kmin, kmax)};
  const double tn = std::sqrt(inner_product(t.t11, t.t11) + 2.0 * inner_product(t.t12, t.t12) +
                              inner_product(t.t22, t.t22));
  if (tn > 0.0) t *= p.at("amplitude_tau") / tn;
  s.u += as_real(u);
  s.tau += as_real(t);
}

void add_single_mode(State& s, const Params& p) {
  const GridSpec& g = s.grid();
  const double k = integer_param(p, "k", "single_mode") * g.wavenumber_unit();
  const double eps = p.at("epsilon"), teps = p.at("tau_epsilon");
  s.u.u2 += ScalarField::sample(g, [&](double x1, double) { return eps * std::sin(k * x1); });
  s.tau.t12 += ScalarField::sample(g, [&](double x1, double) { return teps * std::sin(k * x1); });
}

void add_constant_tau(State& s, const Params& p) {
  const double c = p.at("value");
  const GridSpec& g = s.grid();
  s.tau.t11 += ScalarField::sample(g, [&](double, double) { return c; });
  s.tau.t22 += ScalarField::sample(g, [&](double, double) { return c; });
}

}  // namespace

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, params] : defaults_table()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::map<std::string, double>& generator_defaults(const std::string& name) {
  const auto& table = defaults_table();
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown generator '" + name + "'");
  return it->second;
}

State generate_initial(const std::vector<GeneratorSpec>& specs, const GridSpec& grid,
                       std::uint64_t seed) {
  grid.validate();
  State s;
  s.u = VectorField2::zeros(grid, Representation::real);
  s.tau = SymTensorField2::zeros(grid, Representation::real);
  std::mt19937_64 rng(seed);
  for (const GeneratorSpec& spec : specs) {
    const Params p = resolve(spec);
    if (spec.name == "taylor_green") {
      add_taylor_green(s, p);
    } else if (spec.name == "localized_vortex") {
      add_localized_vortex(s, p);
    } else if (spec.name == "localized_isotropic_tau") {
      add_isotropic_tau(s, p);
    } else if (spec.name == "random_band") {
      add_random_band(s, p, rng);
    } else if (spec.name == "single_mode") {
      add_single_mode(s, p);
    } else if (spec.name == "constant_tau") {
      add_constant_tau(s, p);
    }
  }
  State out = as_spectral(s);
  for (ScalarField* c : out.u.components()) dealias_in_place(*c);
  for (ScalarField* c : out.tau.components()) dealias_in_place(*c);
  out.u = leray_project(out.u);
  return out;
}

}  // namespace oldroyd
