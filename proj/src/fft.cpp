#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace gravswap::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft2d::Fft2d(int n) : n_(n), size_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
  std::lock_guard lock(planner_mutex());
  buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * size_));
  if (buffer_ == nullptr) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
  forward_plan_ = fftw_plan_dft_2d(n, n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_2d(n, n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (std::size_t i = 0; i < size_; ++i) buffer_[i] = 0.0;
}

Fft2d::~Fft2d() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(buffer_);
}

void Fft2d::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void Fft2d::backward() { fftw_execute(static_cast<fftw_plan>(backward_plan_)); }

}  // namespace gravswap::detail
