#pragma once

#include <complex>
#include <vector>

namespace flock::detail {

/// Cached FFTW real<->halfcomplex transforms for one size.
/// Plans are created with FFTW_ESTIMATE so results are reproducible across
/// runs of the same binary. Not thread safe; callers go through fft_for(),
/// which hands out a process-wide instance under a lock.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  int modes() const { return n_ / 2 + 1; }

  /// out[k] = sum_j in[j] e^{-2 pi i jk/n}, k = 0..n/2 (unnormalized).
  void forward(const double* in, std::complex<double>* out);
  /// out[j] = (1/n) * sum over the full symmetric spectrum (normalized).
  void inverse(const std::complex<double>* in, double* out);

 private:
  int n_;
  void* plan_fwd_;
  void* plan_inv_;
  double* real_buf_;
  void* cplx_buf_;
};

/// Process-wide plan cache, keyed by size. Serialized internally.
class FftLease {
 public:
  explicit FftLease(int n);
  ~FftLease();
  RealFft* operator->() { return fft_; }

 private:
  RealFft* fft_;
};

/// Unnormalized halfcomplex spectrum of f (modes() entries).
std::vector<std::complex<double>> forward(const std::vector<double>& f);
/// Inverse of the above, normalized by 1/n.
std::vector<double> inverse(const std::vector<std::complex<double>>& c, int n);

}  // namespace flock::detail
