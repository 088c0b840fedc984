#include "apchemo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace apchemo {
namespace {

// FFTW planning is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  std::lock_guard lock(planner_mutex());
  impl_->real = fftw_alloc_real(n);
  impl_->spectrum = fftw_alloc_complex(n / 2 + 1);
  const int len = static_cast<int>(n);
  impl_->forward = fftw_plan_dft_r2c_1d(len, impl_->real, impl_->spectrum, FFTW_ESTIMATE);
  // c2r overwrites its input; callers always refill the spectrum first.
  impl_->inverse = fftw_plan_dft_c2r_1d(len, impl_->spectrum, impl_->real, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(impl_->forward);
  fftw_destroy_plan(impl_->inverse);
  fftw_free(impl_->real);
  fftw_free(impl_->spectrum);
}

std::span<double> RealFft::real() { return {impl_->real, n_}; }

std::span<std::complex<double>> RealFft::spectrum() {
  return {reinterpret_cast<std::complex<double>*>(impl_->spectrum), n_ / 2 + 1};
}

void RealFft::forward() { fftw_execute(impl_->forward); }
void RealFft::inverse() { fftw_execute(impl_->inverse); }

RealFft& RealFft::cached(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<RealFft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

}  // namespace apchemo
