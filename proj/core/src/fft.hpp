#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Thin RAII wrappers over FFTW's real transforms, unnormalized like FFTW
// itself: inverse(forward(x)) == n * x. Plan creation is serialized on a
// global mutex (FFTW planning is not thread-safe); each instance owns its
// buffers, so distinct instances may execute concurrently.

namespace fes::detail {

class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  // out must hold n/2 + 1 coefficients.
  void forward(std::span<const double> in,
               std::span<std::complex<double>> out);

 private:
  std::size_t n_;
  void* plan_;
  double* in_;
  void* out_;  // fftw_complex*
};

class InverseRealFft {
 public:
  explicit InverseRealFft(std::size_t n);
  ~InverseRealFft();
  InverseRealFft(const InverseRealFft&) = delete;
  InverseRealFft& operator=(const InverseRealFft&) = delete;

  std::size_t size() const { return n_; }

  // in must hold n/2 + 1 coefficients; out holds n samples.
  void inverse(std::span<const std::complex<double>> in,
               std::span<double> out);

 private:
  std::size_t n_;
  void* plan_;
  void* in_;  // fftw_complex*
  double* out_;
};

}  // namespace fes::detail
