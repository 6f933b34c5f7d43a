#include "oldroyd/norms.hpp"

#include <algorithm>
#include <cmath>

#include "oldroyd/errors.hpp"

namespace oldroyd {

double lp_norm_of_magnitudes(std::span<const double> magnitudes, double cell_area, double p) {
  if (!(p >= 1.0)) throw ContractError("lp_norm: p must lie in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : magnitudes) m = std::max(m, x);
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double x : magnitudes) s += x * x;
    return std::sqrt(s * cell_area);
  }
  // Scale by the maximum so large p cannot overflow.
  double m = 0.0;
  for (double x : magnitudes) m = std::max(m, x);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : magnitudes) s += std::pow(x / m, p);
  return m * std::pow(s * cell_area, 1.0 / p);
}

AlignedVector<double> pointwise_magnitude(std::span<const ScalarField* const> comps,
                                          std::span<const double> weights) {
  if (comps.empty()) return {};
  AlignedVector<double> mag(comps[0]->grid().real_size(), 0.0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto x = comps[c]->real();
    const double w = weights[c];
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += w * x[i] * x[i];
  }
  for (double& v : mag) v = std::sqrt(v);
  return mag;
}

double lp_norm(const ScalarField& f, double p) {
  const ScalarField r = as_real(f);
  AlignedVector<double> mag(r.real().begin(), r.real().end());
  for (double& v : mag) v = std::abs(v);
  return lp_norm_of_magnitudes(mag, r.grid().cell_area(), p);
}

double lp_norm(const VectorField2& v, double p) {
  const VectorField2 r = as_real(v);
  const ScalarField* comps[] = {&r.u1, &r.u2};
  const double w[] = {1.0, 1.0};
  return lp_norm_of_magnitudes(pointwise_magnitude(comps, w), r.grid().cell_area(), p);
}

double lp_norm(const SymTensorField2& t, double p) {
  const SymTensorField2 r = as_real(t);
  const ScalarField* comps[] = {&r.t11, &r.t12, &r.t22};
  return lp_norm_of_magnitudes(pointwise_magnitude(comps, kTensorWeights), r.grid().cell_area(), p);
}

}  // namespace oldroyd
