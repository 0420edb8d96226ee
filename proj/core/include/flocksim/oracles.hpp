#pragma once

#include <vector>

#include "flocksim/kernels.hpp"

namespace flock::oracle {

/// Real trigonometric polynomial a0 + sum_k (a_k cos kx + b_k sin kx),
/// used as the exactly-differentiable test input for the quadrature oracles.
struct TrigPoly {
  double a0 = 0.0;
  std::vector<double> a;  // cosine coefficients, modes 1..degree
  std::vector<double> b;  // sine coefficients, modes 1..degree

  int degree() const { return static_cast<int>(a.size()); }
  double eval(double x) const;
  double derivative(double x, int order) const;
  Field sample(const PeriodicGrid& g) const;
};

/// c_alpha = 2 cos(pi alpha / 2) Gamma(2 - alpha) / (alpha (1 - alpha)) for
/// alpha != 1; the closed form, independent of the quadrature in the solver.
double symbol_constant_closed_form(double alpha);

/// phi_alpha(x) through the Hurwitz zeta function:
/// P^{-(1+alpha)} [zeta(1+alpha, x/P) + zeta(1+alpha, 1 - x/P)].
/// For alpha = 1 the exact closed form csc^2(x/2)/4 is used (P = 2 pi).
double periodized_kernel_direct(double alpha, double x, double period = kTwoPi);

/// Direct real-line quadrature of the fractional Laplacian
/// int (f(x+z) + f(x-z) - 2 f(x)) / z^{1+alpha} dz over z > 0:
/// Taylor series on [0, 0.1], Gauss-Legendre panels to z = 200, and a
/// per-mode integration-by-parts tail. Accurate to ~1e-9 for degree <= 8.
double fractional_laplacian_direct(const TrigPoly& f, double alpha, double x);

/// O(n^2) direct sums for the alignment forces (bounded kernels):
/// F_i = dx sum_j phi(d_ij)(u_j - u_i) rho_j, optionally MT-normalized.
Field commutator_force_direct(const KernelSpec& k, const Field& rho,
                              const Field& u);
Field mt_normalized_force_direct(const KernelSpec& k, const Field& rho,
                                 const Field& u);

/// Dissipation functional D g(x) by fine midpoint quadrature with the
/// periodized kernel and a Taylor-series center cell.
double dissipation_direct(const TrigPoly& g, double alpha, double x,
                          int resolution = 1 << 16, double period = kTwoPi);

/// Closed-form two-body Cucker-Smale solution for a constant kernel phi0
/// with the Mean normalization: relative velocity decays exactly like
/// exp(-phi0 t); returns (x1, v1, x2, v2) at time t for the given initials.
struct TwoBody {
  double x1, v1, x2, v2;
};
TwoBody two_body_constant_kernel(double phi0, const TwoBody& init, double t,
                                 double length = kTwoPi);

}  // namespace flock::oracle
