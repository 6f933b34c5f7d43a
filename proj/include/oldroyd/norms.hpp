#pragma once

#include <limits>
#include <span>

#include "oldroyd/field.hpp"

namespace oldroyd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Quadrature L^p norm, (sum |f|^p * cell area)^{1/p}; p = infinity is the grid
// maximum. Vector fields use the pointwise Euclidean norm, tensor fields the
// pointwise Frobenius norm (t12 counted twice).
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField2& v, double p);
double lp_norm(const SymTensorField2& t, double p);

// L^p norm of pointwise magnitudes already sampled on the grid.
double lp_norm_of_magnitudes(std::span<const double> magnitudes, double cell_area, double p);

// Pointwise magnitude sqrt(sum_c w_c f_c^2) of real-space components.
AlignedVector<double> pointwise_magnitude(std::span<const ScalarField* const> real_components,
                                          std::span<const double> weights);

}  // namespace oldroyd
