#include "flocksim/spectral.hpp"

#include <complex>
#include <map>
#include <mutex>

#include "flocksim/kernels.hpp"
#include "fft.hpp"

namespace flock {

namespace {

using cd = std::complex<double>;

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussN = 16;
constexpr double kGaussX[kGaussN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGaussW[kGaussN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

double gauss_panel(double a, double b, double alpha) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kGaussN; ++i) {
    const double x = mid + half * kGaussX[i];
    s += kGaussW[i] * (1.0 - std::cos(x)) / std::pow(x, 1.0 + alpha);
  }
  return s * half;
}

double c_alpha_quadrature(double alpha) {
  // [0, eps]: term-by-term integration of the cosine series.
  const double eps = 0.5;
  double series = 0.0, fact = 1.0;
  for (int j = 1; j <= 20; ++j) {
    fact *= (2.0 * j - 1.0) * (2.0 * j);
    const double p = 2.0 * j - alpha;
    const double term = std::pow(eps, p) / (fact * p);
    series += (j % 2 == 1) ? term : -term;
    if (term < 1e-19) break;
  }
  // [eps, A]: Gauss panels over the smooth oscillatory part.
  const double A = 1000.0;
  double body = 0.0;
  for (double a = eps; a < A - 1e-12; a += 0.5) body += gauss_panel(a, a + 0.5, alpha);
  // [A, inf): exact power part minus an integration-by-parts expansion of
  // the cosine part; remainder O(A^{-4-alpha}).
  const double g0 = std::pow(A, -1.0 - alpha);
  const double g1 = -(1.0 + alpha) * std::pow(A, -2.0 - alpha);
  const double g2 = (1.0 + alpha) * (2.0 + alpha) * std::pow(A, -3.0 - alpha);
  const double g3 =
      -(1.0 + alpha) * (2.0 + alpha) * (3.0 + alpha) * std::pow(A, -4.0 - alpha);
  const double icos = -std::sin(A) * g0 - std::cos(A) * g1 +
                      std::sin(A) * g2 + std::cos(A) * g3;
  const double tail = std::pow(A, -alpha) / alpha - icos;
  return 2.0 * (series + body + tail);
}

std::vector<cd> spectrum(const Field& f) { return detail::forward(f.values()); }

Field from_spectrum(const PeriodicGrid& g, const std::vector<cd>& c) {
  return Field(g, detail::inverse(c, g.n));
}

}  // namespace

double fractional_symbol_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("fractional order alpha must lie in (0,2)");
  static std::mutex mu;
  static std::map<double, double> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;
  const double c = c_alpha_quadrature(alpha);
  cache.emplace(alpha, c);
  return c;
}

Field derivative(const Field& f, int order) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("derivative order must be 1, 2 or 3");
  auto c = spectrum(f);
  const int n = f.size();
  for (int k = 0; k <= n / 2; ++k) {
    const double kappa = f.grid().wavenumber(k);
    cd mul = std::pow(cd(0.0, kappa), order);
    if (k == n / 2 && order % 2 == 1) mul = 0.0;  // no sign for Nyquist sine
    c[k] *= mul;
  }
  return from_spectrum(f.grid(), c);
}

Field fractional_laplacian(const Field& f, double alpha) {
  const double c_a = fractional_symbol_constant(alpha);
  auto c = spectrum(f);
  const int n = f.size();
  for (int k = 0; k <= n / 2; ++k) {
    const double kappa = f.grid().wavenumber(k);
    c[k] *= -c_a * std::pow(std::fabs(kappa), alpha);
  }
  c[0] = 0.0;
  return from_spectrum(f.grid(), c);
}

Field convolve(const Field& phi_tab, const Field& f) {
  require_same_grid(phi_tab, f);
  auto cp = spectrum(phi_tab);
  auto cf = spectrum(f);
  const double dx = f.grid().dx();
  // from_spectrum carries the single 1/n that folds the product of two
  // unnormalized transforms back to a circular sum; dx turns it into the
  // trapezoid quadrature of the convolution integral.
  for (size_t k = 0; k < cf.size(); ++k) cf[k] *= dx * cp[k];
  return from_spectrum(f.grid(), cf);
}

Field multiply_dealiased(const Field& f, const Field& g) {
  require_same_grid(f, g);
  const int n = f.size();
  const int m = 2 * n;  // quadratic products are fully unaliased at 2n
  auto cf = spectrum(f);
  auto cg = spectrum(g);
  auto pad = [&](const std::vector<cd>& c) {
    std::vector<cd> p(m / 2 + 1, cd(0.0));
    for (int k = 0; k < n / 2; ++k) p[k] = c[k] * (double(m) / n);
    p[n / 2] = 0.5 * c[n / 2] * (double(m) / n);  // split the Nyquist pair
    return detail::inverse(p, m);
  };
  auto pf = pad(cf);
  auto pg = pad(cg);
  std::vector<double> prod(m);
  for (int j = 0; j < m; ++j) prod[j] = pf[j] * pg[j];
  auto cp = detail::forward(prod);
  std::vector<cd> trunc(n / 2 + 1, cd(0.0));
  for (int k = 0; k < n / 2; ++k) trunc[k] = cp[k] * (double(n) / m);
  trunc[n / 2] = 2.0 * cp[n / 2].real() * (double(n) / m);
  return from_spectrum(f.grid(), trunc);
}

double interpolate(const Field& f, double x) {
  const int n = f.size();
  auto c = spectrum(f);
  const double xr = f.grid().wrap(x);
  double s = c[0].real();
  for (int k = 1; k < n / 2; ++k) {
    const double kx = f.grid().wavenumber(k) * xr;
    s += 2.0 * (c[k].real() * std::cos(kx) - c[k].imag() * std::sin(kx));
  }
  s += c[n / 2].real() * std::cos(f.grid().wavenumber(n / 2) * xr);
  return s / n;
}

Field shift(const Field& f, double a) {
  const int n = f.size();
  auto c = spectrum(f);
  for (int k = 1; k < n / 2; ++k) {
    const double ka = f.grid().wavenumber(k) * a;
    c[k] *= cd(std::cos(ka), std::sin(ka));
  }
  c[n / 2] *= std::cos(f.grid().wavenumber(n / 2) * a);
  return from_spectrum(f.grid(), c);
}

namespace {

// Periodized singular kernel sampled at the nonzero grid offsets,
// cached per (n, L, alpha).
const std::vector<double>& dissipation_kernel(const PeriodicGrid& g,
                                              double alpha) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, std::vector<double>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(g.n, g.length, alpha);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<double> tab(g.n, 0.0);
  for (int m = 1; m <= g.n / 2; ++m) {
    const double z = m * g.dx();
    const double v = periodized_kernel_eval(alpha, z, 64, g.length);
    tab[m] = v;
    tab[g.n - m] = v;  // even in z
  }
  return cache.emplace(key, std::move(tab)).first->second;
}

}  // namespace

double dissipation_pointwise(const Field& g, const Field& g_prime, int j,
                             double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("dissipation: alpha must lie in (0,2)");
  const int n = g.size();
  if (j < 0 || j >= n) throw std::invalid_argument("dissipation: index");
  const auto& tab = dissipation_kernel(g.grid(), alpha);
  const double dx = g.grid().dx();
  double s = 0.0;
  for (int m = 1; m < n; ++m) {
    const double d = g[j] - g[(j + m) % n];
    s += tab[m] * d * d;
  }
  s *= dx;
  // z = 0 cell: |g'(x)|^2 * int_{|z|<dx/2} |z|^{1-alpha} dz
  const double half = 0.5 * dx;
  s += g_prime[j] * g_prime[j] * 2.0 * std::pow(half, 2.0 - alpha) /
       (2.0 - alpha);
  return s;
}

double dissipation_pointwise(const Field& g, int j, double alpha) {
  return dissipation_pointwise(g, derivative(g, 1), j, alpha);
}

}  // namespace flock
