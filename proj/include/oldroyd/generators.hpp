#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oldroyd/model.hpp"

namespace oldroyd {

// Named initial-data generator with numeric parameters. Recognized names and
// parameters (defaults in generator_defaults()):
//
//   taylor_green             amplitude, k
//   localized_vortex         amplitude, width       psi = A exp(-r^2/w^2), u = (d2 psi, -d1 psi)
//   localized_isotropic_tau  amplitude, width       tau = A exp(-r^2/w^2) Id
//   random_band              amplitude_u, amplitude_tau, k_min, k_max
//   single_mode              epsilon, tau_epsilon, k  u = eps (0, sin k x1), tau12 = tau_eps sin k x1
//   constant_tau             value                  tau = value Id
//
// Localized profiles are centred in the box; k counts multiples of 2 pi / L.
struct GeneratorSpec {
  std::string name;
  std::map<std::string, double> params;

  bool operator==(const GeneratorSpec&) const = default;
};

const std::vector<std::string>& generator_names();
// Default parameters of a generator; throws ConfigError for unknown names.
const std::map<std::string, double>& generator_defaults(const std::string& name);

// Sum of the generators' fields at t = 0, dealiased and with u projected.
// random_band draws from the seed. Throws ResolutionError when a width spans
// fewer than 4 grid points and ConfigError for unknown names or parameters
// or a width too wide for the profile to vanish at the box boundary.
State generate_initial(const std::vector<GeneratorSpec>& specs, const GridSpec& grid,
                       std::uint64_t seed = 1);
inline State generate_initial(const GeneratorSpec& spec, const GridSpec& grid,
                              std::uint64_t seed = 1) {
  return generate_initial(std::vector<GeneratorSpec>{spec}, grid, seed);
}

}  // namespace oldroyd
