#pragma once

#include "flocksim/grid.hpp"

namespace flock {

/// order-th spectral derivative, order in {1,2,3}. The Nyquist mode is
/// zeroed for odd orders.
Field derivative(const Field& f, int order);

/// c_alpha = 2 * int_0^inf (1 - cos s) / s^{1+alpha} ds, the constant that
/// makes the Fourier symbol -c_alpha |k|^alpha equal to the periodized-kernel
/// operator with kernel |z|^{-(1+alpha)}. Computed by quadrature once per
/// alpha and cached.
double fractional_symbol_constant(double alpha);

/// Fractional Laplacian with symbol -c_alpha |k|^alpha, alpha in (0,2).
Field fractional_laplacian(const Field& f, double alpha);

/// Circular convolution (phi * f)(x_j) = dx * sum_m phi(x_j - x_m) f(x_m),
/// evaluated through transforms. phi_tab is the kernel sampled on the grid.
Field convolve(const Field& phi_tab, const Field& f);

/// Pointwise product dealiased by zero-padded transforms.
Field multiply_dealiased(const Field& f, const Field& g);

/// Trigonometric interpolation of f at an arbitrary point (wrapped into the
/// period). Exact on band-limited data and reproduces grid nodes.
double interpolate(const Field& f, double x);

/// f(x + a) by spectral phase shift; exact for grid-multiple shifts.
Field shift(const Field& f, double a);

/// D g(x_j) = int |g(x_j) - g(x_j + z)|^2 / |z|^{1+alpha} dz over the real
/// line, using midpoint quadrature with the periodized kernel; the z = 0
/// cell uses the local slope |g'(x_j)|^2.
double dissipation_pointwise(const Field& g, int j, double alpha);

/// Same, with the spectral derivative of g supplied by the caller (saves
/// recomputation when sweeping over j).
double dissipation_pointwise(const Field& g, const Field& g_prime, int j,
                             double alpha);

}  // namespace flock
