#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "flocksim/oracles.hpp"
#include "flocksim/spectral.hpp"

using namespace flock;

namespace {

double sup_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a[j] - b[j]));
  return m;
}

}  // namespace

TEST_CASE("derivative of sin is cos") {
  PeriodicGrid g(64);
  Field f = Field::sample(g, [](double x) { return std::sin(x); });
  Field d = derivative(f, 1);
  Field expect = Field::sample(g, [](double x) { return std::cos(x); });
  CHECK(sup_diff(d, expect) <= 1e-12);
}

TEST_CASE("derivative of a constant vanishes at every order") {
  PeriodicGrid g(32);
  Field f = Field::sample(g, [](double) { return 7.0; });
  for (int order : {1, 2, 3}) CHECK(sup_norm(derivative(f, order)) <= 1e-13);
}

TEST_CASE("derivative of exp(sin x) against the analytic formula") {
  PeriodicGrid g(256);
  Field f = Field::sample(g, [](double x) { return std::exp(std::sin(x)); });
  Field expect = Field::sample(
      g, [](double x) { return std::cos(x) * std::exp(std::sin(x)); });
  CHECK(sup_diff(derivative(f, 1), expect) <= 1e-8);
}

TEST_CASE("derivative rejects unsupported orders") {
  PeriodicGrid g(32);
  Field f = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK_THROWS_AS(derivative(f, 0), std::invalid_argument);
  CHECK_THROWS_AS(derivative(f, 4), std::invalid_argument);
}

TEST_CASE("first derivative applied twice matches the second derivative") {
  PeriodicGrid g(128);
  Field f = Field::sample(
      g, [](double x) { return std::sin(3 * x) + 0.2 * std::cos(5 * x); });
  CHECK(sup_diff(derivative(derivative(f, 1), 1), derivative(f, 2)) <= 1e-10);
}

TEST_CASE("fractional Laplacian annihilates constants and zero-means output") {
  PeriodicGrid g(64);
  Field c = Field::sample(g, [](double) { return 3.5; });
  CHECK(sup_norm(fractional_laplacian(c, 1.3)) <= 1e-13);

  Field f = Field::sample(
      g, [](double x) { return std::exp(std::cos(x)) + std::sin(2 * x); });
  CHECK(std::fabs(mean(fractional_laplacian(f, 1.0))) <= 1e-13);
}

TEST_CASE("fractional Laplacian eigenrelation on cos(kx) at alpha = 1") {
  PeriodicGrid g(64);
  const double c1 = fractional_symbol_constant(1.0);
  for (int k : {1, 3, 7}) {
    Field f = Field::sample(g, [k](double x) { return std::cos(k * x); });
    Field expect = Field::sample(
        g, [&](double x) { return -c1 * k * std::cos(k * x); });
    CHECK(sup_diff(fractional_laplacian(f, 1.0), expect) <= 1e-10 * k);
  }
}

TEST_CASE("symbol constant quadrature matches the closed form; c_1 = pi") {
  for (double a : {0.3, 0.5, 1.5, 1.9}) {
    const double q = fractional_symbol_constant(a);
    const double closed = oracle::symbol_constant_closed_form(a);
    CHECK(std::fabs(q - closed) <= 1e-10 * closed);
  }
  CHECK(std::fabs(fractional_symbol_constant(1.0) - M_PI) <= 1e-10);
}

TEST_CASE("fractional Laplacian rejects alpha outside (0,2)") {
  PeriodicGrid g(32);
  Field f = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK_THROWS_AS(fractional_laplacian(f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fractional_laplacian(f, 2.0), std::invalid_argument);
}

TEST_CASE("spectral vs direct quadrature on a random degree-8 polynomial") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  oracle::TrigPoly p;
  p.a0 = U(rng);
  for (int k = 0; k < 8; ++k) {
    p.a.push_back(U(rng));
    p.b.push_back(U(rng));
  }
  PeriodicGrid g(256);
  Field f = p.sample(g);
  for (double alpha : {1.0, 1.5}) {
    Field lap = fractional_laplacian(f, alpha);
    double err = 0.0;
    for (int j = 0; j < g.n; j += 8) {
      const double o = oracle::fractional_laplacian_direct(p, alpha, g.node(j));
      err = std::max(err, std::fabs(o - lap[j]));
    }
    CHECK(err <= 1e-6);
  }
}

TEST_CASE("convolution with a constant yields the kernel integral") {
  PeriodicGrid g(128);
  Field phi = Field::sample(g, [&](double x) {
    return 2.0 + std::cos(std::min(x, g.length - x));
  });
  Field ones = Field::sample(g, [](double) { return 1.0; });
  Field c = convolve(phi, ones);
  const double expect = integral(phi);
  for (int j = 0; j < g.n; ++j) CHECK(c[j] == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("symmetric kernels have cos(x) as a convolution eigenvector") {
  PeriodicGrid g(128);
  Field phi = Field::sample(g, [&](double x) {
    const double r = std::min(x, g.length - x);
    return 1.5 + 0.5 * std::cos(r) + 0.1 * std::cos(2 * r);
  });
  Field f = Field::sample(g, [](double x) { return std::cos(x); });
  // Eigenvalue by direct sum.
  double lam = 0.0;
  for (int j = 0; j < g.n; ++j) lam += phi[j] * std::cos(g.node(j)) * g.dx();
  Field expect = Field::sample(g, [&](double x) { return lam * std::cos(x); });
  CHECK(sup_diff(convolve(phi, f), expect) <= 1e-12);
}

TEST_CASE("convolution is bilinear and symmetric for even kernels") {
  PeriodicGrid g(64);
  Field phi = Field::sample(g, [&](double x) {
    const double r = std::min(x, g.length - x);
    return std::exp(-r * r);
  });
  Field f = Field::sample(g, [](double x) { return std::sin(x) + 0.3; });
  Field h = Field::sample(g, [](double x) { return std::cos(2 * x); });

  Field combo(g);
  for (int j = 0; j < g.n; ++j) combo[j] = 2.0 * f[j] - 0.5 * h[j];
  Field lhs = convolve(phi, combo);
  Field cf = convolve(phi, f);
  Field ch = convolve(phi, h);
  double err = 0.0;
  for (int j = 0; j < g.n; ++j)
    err = std::max(err, std::fabs(lhs[j] - (2.0 * cf[j] - 0.5 * ch[j])));
  CHECK(err <= 1e-12);

  CHECK(std::fabs(inner(cf, h) - inner(f, ch)) <= 1e-10);
}

TEST_CASE("convolution rejects mismatched grids") {
  PeriodicGrid g1(64), g2(128);
  Field a(g1), b(g2);
  CHECK_THROWS_AS(convolve(a, b), std::invalid_argument);
}

TEST_CASE("dealiased product matches the pointwise product for resolved data") {
  PeriodicGrid g(128);
  Field f = Field::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  Field h = Field::sample(g, [](double x) { return std::sin(2 * x); });
  Field fh = multiply_dealiased(f, h);
  double err = 0.0;
  for (int j = 0; j < g.n; ++j) err = std::max(err, std::fabs(fh[j] - f[j] * h[j]));
  CHECK(err <= 1e-13);
}

TEST_CASE("dissipation vanishes on constants and is quadratically homogeneous") {
  PeriodicGrid g(128);
  Field c = Field::sample(g, [](double) { return 4.2; });
  CHECK(dissipation_pointwise(c, 5, 1.0) <= 1e-14);

  Field f = Field::sample(g, [](double x) { return std::sin(x) + 0.2 * std::cos(3 * x); });
  Field f3(g);
  for (int j = 0; j < g.n; ++j) f3[j] = 3.0 * f[j];
  const double base = dissipation_pointwise(f, 17, 1.0);
  CHECK(base >= 0.0);
  CHECK(dissipation_pointwise(f3, 17, 1.0) == doctest::Approx(9.0 * base).epsilon(1e-12));
}

TEST_CASE("dissipation of cos(x) at x = 0 against a refined quadrature oracle") {
  PeriodicGrid g(512);
  Field f = Field::sample(g, [](double x) { return std::cos(x); });
  oracle::TrigPoly p;
  p.a = {1.0};
  p.b = {0.0};
  const double got = dissipation_pointwise(f, 0, 1.0);
  const double expect = oracle::dissipation_direct(p, 1.0, 0.0);
  CHECK(std::fabs(got - expect) <= 1e-4 * expect);
}

TEST_CASE("interpolation is exact on band-limited data and at nodes") {
  PeriodicGrid g(64);
  Field f = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK(std::fabs(interpolate(f, M_PI / 5) - std::sin(M_PI / 5)) <= 1e-12);
  for (int j : {0, 13, 63})
    CHECK(std::fabs(interpolate(f, g.node(j)) - f[j]) <= 1e-13);
}

TEST_CASE("interpolation of exp(cos x) against the analytic oracle") {
  PeriodicGrid g(256);
  Field f = Field::sample(g, [](double x) { return std::exp(std::cos(x)); });
  CHECK(std::fabs(interpolate(f, 1.234) - std::exp(std::cos(1.234))) <= 1e-8);
}

TEST_CASE("spectral shift by one grid cell is an exact rotation") {
  PeriodicGrid g(64);
  Field f = Field::sample(g, [](double x) { return std::exp(std::sin(x)); });
  Field s = shift(f, g.dx());
  double err = 0.0;
  for (int j = 0; j < g.n; ++j)
    err = std::max(err, std::fabs(s[j] - f[(j + 1) % g.n]));
  CHECK(err <= 1e-12);
}
