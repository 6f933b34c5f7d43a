#pragma once

#include <complex>
#include <span>

namespace oldroyd::fft {

// Unnormalized n x n real-to-complex transform into the half layout.
void forward(int n, std::span<const double> in, std::span<std::complex<double>> out);

// Inverse of forward(), including the 1/n^2 factor. Does not modify `in`.
void inverse(int n, std::span<const std::complex<double>> in, std::span<double> out);

// Number of FFTW threads, read once from OLDROYD_THREADS (default 1).
int thread_count();

}  // namespace oldroyd::fft
