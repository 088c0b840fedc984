#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace apchemo {

/// Real <-> half-complex transform of a fixed length, backed by FFTW.
///
/// Unnormalised in both directions: inverse(forward(x)) = n x. Instances own
/// their buffers and plans; use `RealFft::cached(n)` for a per-thread instance.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  /// Real input buffer of length n (input to forward, output of inverse).
  std::span<double> real();
  /// Spectrum buffer of length n/2 + 1.
  std::span<std::complex<double>> spectrum();

  void forward();
  void inverse();

  static RealFft& cached(std::size_t n);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace apchemo
