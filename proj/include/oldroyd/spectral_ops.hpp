#pragma once

#include <utility>

#include "oldroyd/field.hpp"

namespace oldroyd {

// Differential and nonlocal operators on the periodic box. Inputs may be in
// either representation; results are spectral.
//
// Conventions:
//  * first derivatives use i*k with the Nyquist row/column zeroed, and every
//    operator built from them (Leray projector, Biot-Savart, pressure) uses
//    the same "derivative wavevector" so the discrete identities
//    div P = 0, curl grad = 0, curl BS(w) = w hold to round-off;
//  * inverse Laplacians return 0 at k = 0.

ScalarField partial1(const ScalarField& f);
ScalarField partial2(const ScalarField& f);
VectorField2 gradient(const ScalarField& f);
ScalarField divergence(const VectorField2& v);
// Component i is d1 t_i1 + d2 t_i2.
VectorField2 divergence_tensor(const SymTensorField2& t);
// d1 v2 - d2 v1
ScalarField curl2d(const VectorField2& v);
ScalarField laplacian(const ScalarField& f);
ScalarField inverse_laplacian(const ScalarField& f);
VectorField2 laplacian(const VectorField2& v);
SymTensorField2 laplacian(const SymTensorField2& t);

VectorField2 leray_project(const VectorField2& v);

// Delta^{-1} curl div t, zero mean.
ScalarField riesz_R(const SymTensorField2& t);

// Velocity with curl equal to omega, zero divergence and the given mean.
// Throws MeanCompatibilityError when the mean of omega exceeds 1e-10 (relative
// to its L^2 size, or absolutely for tiny fields).
VectorField2 biot_savart(const ScalarField& omega,
                         std::pair<double, double> mean_velocity = {0.0, 0.0});

// Zeroes coefficients with max(|m1|,|m2|) above dealias_fraction * n / 2.
ScalarField dealias(const ScalarField& f);
void dealias_in_place(ScalarField& spectral_field);

// Pointwise product of two fields followed by the dealiasing filter.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

// Transport term u1 d1 f + u2 d2 f, formed on the grid and dealiased once.
ScalarField advect(const VectorField2& u, const ScalarField& f);
SymTensorField2 advect(const VectorField2& u, const SymTensorField2& t);

// Mean over the box.
double mean(const ScalarField& f);

// L^2 norm by the spectral (Parseval) sum and by real-space quadrature.
double l2_norm_spectral(const ScalarField& f);
double l2_norm_quadrature(const ScalarField& f);
// L^2 inner product of two real fields via the spectral sum.
double inner_product(const ScalarField& a, const ScalarField& b);

// sum over modes of |k|^{2 power} |f^(k)|^2, Parseval-normalized; power 1 is
// ||grad f||^2 and power 2 is ||Lap f||^2 with the exact wavenumbers.
double weighted_energy(const ScalarField& f, int power);

double max_abs(const ScalarField& f);

}  // namespace oldroyd
