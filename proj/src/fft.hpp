#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace gravswap::detail {

/// In-place square 2-D FFT over an owned, FFTW-aligned buffer. Plans use
/// FFTW_ESTIMATE so the algorithm (and hence every bit of output) is the
/// same from run to run. Plan creation is serialised internally.
class Fft2d {
 public:
  explicit Fft2d(int n);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  std::span<std::complex<double>> data() { return {buffer_, size_}; }
  std::span<const std::complex<double>> data() const { return {buffer_, size_}; }

  /// Unnormalised forward transform (exp(-i k x)).
  void forward();
  /// Unnormalised inverse transform; divide by n^2 to undo forward().
  void backward();

  int n() const { return n_; }

 private:
  int n_;
  std::size_t size_;
  std::complex<double>* buffer_;
  void* forward_plan_;
  void* backward_plan_;
};

}  // namespace gravswap::detail
