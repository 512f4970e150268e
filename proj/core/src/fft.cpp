#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "fes/errors.hpp"

namespace fes::detail {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2) raise(Errc::invalid_argument, "FFT size must be >= 2");
  in_ = fftw_alloc_real(n_);
  out_ = fftw_alloc_complex(n_ / 2 + 1);
  if (in_ == nullptr || out_ == nullptr)
    raise(Errc::storage_error, "FFT buffer allocation failed");
  std::lock_guard lock(plan_mutex());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), in_,
                               static_cast<fftw_complex*>(out_),
                               FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != spectrum_size())
    raise(Errc::invalid_argument, "FFT buffer size mismatch");
  std::memcpy(in_, in.data(), n_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_));
  // fftw_complex and std::complex<double> are layout-compatible.
  std::memcpy(out.data(), out_, spectrum_size() * sizeof(fftw_complex));
}

InverseRealFft::InverseRealFft(std::size_t n) : n_(n) {
  if (n < 2) raise(Errc::invalid_argument, "FFT size must be >= 2");
  in_ = fftw_alloc_complex(n_ / 2 + 1);
  out_ = fftw_alloc_real(n_);
  if (in_ == nullptr || out_ == nullptr)
    raise(Errc::storage_error, "FFT buffer allocation failed");
  std::lock_guard lock(plan_mutex());
  plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_),
                               static_cast<fftw_complex*>(in_), out_,
                               FFTW_ESTIMATE);
}

InverseRealFft::~InverseRealFft() {
  {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
}

void InverseRealFft::inverse(std::span<const std::complex<double>> in,
                             std::span<double> out) {
  if (in.size() != n_ / 2 + 1 || out.size() != n_)
    raise(Errc::invalid_argument, "FFT buffer size mismatch");
  std::memcpy(in_, in.data(), (n_ / 2 + 1) * sizeof(fftw_complex));
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::memcpy(out.data(), out_, n_ * sizeof(double));
}

}  // namespace fes::detail
