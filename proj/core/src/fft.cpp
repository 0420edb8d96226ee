#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace flock::detail {

RealFft::RealFft(int n) : n_(n) {
  real_buf_ = fftw_alloc_real(n);
  cplx_buf_ = fftw_alloc_complex(n / 2 + 1);
  plan_fwd_ = fftw_plan_dft_r2c_1d(n, real_buf_,
                                   static_cast<fftw_complex*>(cplx_buf_),
                                   FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(cplx_buf_),
                                   real_buf_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(real_buf_);
  fftw_free(cplx_buf_);
}

void RealFft::forward(const double* in, std::complex<double>* out) {
  std::memcpy(real_buf_, in, sizeof(double) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, cplx_buf_, sizeof(std::complex<double>) * modes());
}

void RealFft::inverse(const std::complex<double>* in, double* out) {
  std::memcpy(cplx_buf_, in, sizeof(std::complex<double>) * modes());
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double scale = 1.0 / n_;
  for (int j = 0; j < n_; ++j) out[j] = real_buf_[j] * scale;
}

namespace {
std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}
std::map<int, std::unique_ptr<RealFft>>& cache() {
  static std::map<int, std::unique_ptr<RealFft>> c;
  return c;
}
}  // namespace

FftLease::FftLease(int n) {
  cache_mutex().lock();
  auto& slot = cache()[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  fft_ = slot.get();
}

FftLease::~FftLease() { cache_mutex().unlock(); }

std::vector<std::complex<double>> forward(const std::vector<double>& f) {
  FftLease fft(static_cast<int>(f.size()));
  std::vector<std::complex<double>> c(fft->modes());
  fft->forward(f.data(), c.data());
  return c;
}

std::vector<double> inverse(const std::vector<std::complex<double>>& c,
                            int n) {
  FftLease fft(n);
  std::vector<double> f(n);
  fft->inverse(c.data(), f.data());
  return f;
}

}  // namespace flock::detail
