#include "fft.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

#include "oldroyd/aligned.hpp"

namespace oldroyd::fft {
namespace {

// FFTW_ESTIMATE keeps plan selection independent of timing measurements, so
// repeated runs produce bit-identical output.
struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

void init_threads() {
  static std::once_flag once;
  std::call_once(once, [] {
    const int threads = thread_count();
    if (threads > 1) {
      fftw_init_threads();
      fftw_plan_with_nthreads(threads);
    }
  });
}

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(plan_mutex());
  init_threads();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::size_t real_size = static_cast<std::size_t>(n) * n;
  const std::size_t spec_size = static_cast<std::size_t>(n) * (n / 2 + 1);
  AlignedVector<double> r(real_size);
  AlignedVector<std::complex<double>> c(spec_size);
  auto* cptr = reinterpret_cast<fftw_complex*>(c.data());
  Plans p;
  p.forward = fftw_plan_dft_r2c_2d(n, n, r.data(), cptr, FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_2d(n, n, cptr, r.data(), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

int thread_count() {
  static const int threads = [] {
    const char* env = std::getenv("OLDROYD_THREADS");
    if (env == nullptr) return 1;
    try {
      const int v = std::stoi(env);
      return v > 0 ? v : 1;
    } catch (...) {
      return 1;
    }
  }();
  return threads;
}

void forward(int n, std::span<const double> in, std::span<std::complex<double>> out) {
  const Plans& p = plans_for(n);
  // r2c leaves its input intact; FFTW's signature is merely non-const.
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse(int n, std::span<const std::complex<double>> in, std::span<double> out) {
  const Plans& p = plans_for(n);
  // c2r destroys its input.
  thread_local AlignedVector<std::complex<double>> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (double& x : out) x *= scale;
}

}  // namespace oldroyd::fft
