#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flocksim/kernels.hpp"
#include "flocksim/oracles.hpp"

using namespace flock;

namespace {

double sup_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a[j] - b[j]));
  return m;
}

}  // namespace

TEST_CASE("kernel bounds of 2 + cos r are (1, 3)") {
  auto b = kernel_bounds(KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0));
  CHECK(b.sup_finite);
  CHECK(b.inf == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.sup == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("kernel bounds of the torus Gaussian") {
  auto b = kernel_bounds(KernelSpec::bounded(KernelShape::GaussianTorus, 1.0));
  CHECK(b.inf == doctest::Approx(std::exp(-M_PI * M_PI / 2)).epsilon(1e-10));
  CHECK(b.sup == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singular kernel bounds: infimum at the antipode, infinite sup") {
  auto b = kernel_bounds(KernelSpec::singular(1.0));
  CHECK(!b.sup_finite);
  CHECK(b.inf == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("periodized kernel: phi_1(pi) = 1/4 and evenness") {
  CHECK(std::fabs(periodized_kernel_eval(1.0, M_PI, 64) - 0.25) <= 1e-10);
  for (double x : {0.3, 1.1, 2.9})
    CHECK(periodized_kernel_eval(1.3, x, 32) ==
          periodized_kernel_eval(1.3, -x, 32));
}

TEST_CASE("periodized kernel tail correction matches a truncation-1e6 sum") {
  // Slow reference: raw image sum to |k| <= 1e6, no tail correction.
  const double alpha = 1.0, x = M_PI / 2;
  double ref = 0.0;
  for (long k = -1000000; k <= 1000000; ++k)
    ref += std::pow(std::fabs(x + kTwoPi * k), -(1.0 + alpha));
  // The raw sum itself is missing a ~1e-7 tail at this truncation; compare
  // against the analytically tail-corrected value through the zeta oracle.
  const double exact = oracle::periodized_kernel_direct(alpha, x);
  CHECK(std::fabs(ref - exact) <= 1e-6);  // raw sum sanity
  CHECK(std::fabs(periodized_kernel_eval(alpha, x, 64) - exact) <= 1e-10);
}

TEST_CASE("periodized kernel matches the Hurwitz-zeta oracle at alpha = 1.5") {
  for (double x : {0.2, 1.0, 2.5, M_PI})
    CHECK(std::fabs(periodized_kernel_eval(1.5, x, 64) -
                    oracle::periodized_kernel_direct(1.5, x)) <= 1e-10);
}

TEST_CASE("periodized kernel rejects the singular point") {
  CHECK_THROWS_AS(periodized_kernel_eval(1.0, 0.0, 64), SingularPointError);
  CHECK_THROWS_AS(periodized_kernel_eval(1.0, kTwoPi, 64), SingularPointError);
}

TEST_CASE("tabulated kernel stays within its reported bounds") {
  PeriodicGrid g(256);
  for (auto spec : {KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0),
                    KernelSpec::bounded(KernelShape::GaussianTorus, 0.8),
                    KernelSpec::bounded(KernelShape::AlgebraicDecay, 1.5)}) {
    auto b = kernel_bounds(spec);
    Field tab = tabulate(spec, g);
    for (int j = 0; j < g.n; ++j) {
      CHECK(tab[j] >= b.inf - 1e-12);
      CHECK(tab[j] <= b.sup + 1e-12);
    }
  }
}

TEST_CASE("commutator force vanishes for constant u and for zero density") {
  PeriodicGrid g(128);
  auto k = KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0);
  Field rho = Field::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  Field cu = Field::sample(g, [](double) { return 2.5; });
  CHECK(sup_norm(commutator_force(k, rho, cu)) <= 1e-12);

  Field zero(g);
  Field u = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK(sup_norm(commutator_force(k, zero, u)) <= 1e-14);
}

TEST_CASE("bounded commutator force against the O(n^2) direct sum") {
  PeriodicGrid g(256);
  auto k = KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0);
  Field rho = Field::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  Field u = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK(sup_diff(commutator_force(k, rho, u),
                 oracle::commutator_force_direct(k, rho, u)) <= 1e-8);
}

TEST_CASE("MT force against the O(n^2) direct sum") {
  PeriodicGrid g(256);
  auto k = KernelSpec::mostsch_tadmor(KernelShape::OffsetCosine, 2.0, 1.0);
  Field rho = Field::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  Field u = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK(sup_diff(mt_normalized_force(k, rho, u),
                 oracle::mt_normalized_force_direct(k, rho, u)) <= 1e-8);
}

TEST_CASE("commutator force conserves momentum: integral of F rho is zero") {
  PeriodicGrid g(256);
  Field rho = Field::sample(g, [](double x) {
    return 1.0 + 0.4 * std::cos(x) + 0.2 * std::sin(2 * x);
  });
  Field u = Field::sample(g, [](double x) { return std::sin(x) + 0.3 * std::cos(3 * x); });
  for (auto spec : {KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0),
                    KernelSpec::singular(1.0), KernelSpec::singular(1.5)}) {
    Field F = commutator_force(spec, rho, u);
    CHECK(std::fabs(inner(F, rho)) <= 1e-10);
  }
}

TEST_CASE("bounded commutator force obeys the 2 I_phi mass sup bound") {
  PeriodicGrid g(128);
  auto k = KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0);
  Field rho = Field::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  Field u = Field::sample(g, [](double x) { return 0.7 * std::sin(x); });
  const double I_phi = kernel_bounds(k).sup;
  CHECK(sup_norm(commutator_force(k, rho, u)) <=
        2.0 * I_phi * integral(rho) * sup_norm(u));
}

TEST_CASE("MT force is invariant under density rescaling") {
  PeriodicGrid g(128);
  auto k = KernelSpec::mostsch_tadmor(KernelShape::OffsetCosine, 2.0, 1.0);
  Field rho = Field::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(x); });
  Field u = Field::sample(g, [](double x) { return std::sin(x); });
  Field base = mt_normalized_force(k, rho, u);
  for (double lam : {0.5, 7.0, 1e3}) {
    Field scaled(g);
    for (int j = 0; j < g.n; ++j) scaled[j] = lam * rho[j];
    CHECK(sup_diff(mt_normalized_force(k, scaled, u), base) <= 1e-13);
  }
}

TEST_CASE("MT force signals a degenerate normalization instead of clamping") {
  PeriodicGrid g(128);
  // A sign-changing density makes phi*rho change sign on the grid even for
  // a strictly positive kernel.
  auto k = KernelSpec::mostsch_tadmor(KernelShape::OffsetCosine, 2.0, 1.0);
  Field rho = Field::sample(g, [](double x) { return std::cos(x); });
  Field u = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK_THROWS_AS(mt_normalized_force(k, rho, u), DegenerateNormalizationError);
}

TEST_CASE("kernel shape registry round-trips and rejects unknown names") {
  for (auto s : {KernelShape::Constant, KernelShape::OffsetCosine,
                 KernelShape::GaussianTorus, KernelShape::AlgebraicDecay})
    CHECK(kernel_shape_from_name(kernel_shape_name(s)) == s);
  CHECK_THROWS_AS(kernel_shape_from_name("lorentzian"), std::invalid_argument);
}
