#include "flocksim/kernels.hpp"

#include <cmath>

#include "flocksim/spectral.hpp"

namespace flock {

KernelSpec KernelSpec::bounded(KernelShape s, double a, double b) {
  return KernelSpec{KernelVariant::BoundedSymmetric, s, a, b, 1.0};
}

KernelSpec KernelSpec::mostsch_tadmor(KernelShape s, double a, double b) {
  return KernelSpec{KernelVariant::MostschTadmor, s, a, b, 1.0};
}

KernelSpec KernelSpec::singular(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("singular kernel: alpha must lie in (0,2)");
  KernelSpec k;
  k.variant = KernelVariant::SingularFractional;
  k.alpha = alpha;
  return k;
}

double KernelSpec::eval(double r) const {
  if (is_singular())
    throw std::invalid_argument("eval() is only defined for bounded kernels");
  switch (shape) {
    case KernelShape::Constant:
      return p0;
    case KernelShape::OffsetCosine:
      return p0 + p1 * std::cos(r);
    case KernelShape::GaussianTorus:
      return std::exp(-r * r / (2.0 * p0 * p0));
    case KernelShape::AlgebraicDecay:
      return std::pow(1.0 + r * r, -p0);
  }
  throw std::logic_error("unreachable kernel shape");
}

double periodized_kernel_eval(double alpha, double x, int truncation,
                              double period) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("periodized kernel: alpha must lie in (0,2)");
  if (truncation < 1)
    throw std::invalid_argument("periodized kernel: truncation must be >= 1");
  // wrap into (-P/2, P/2]
  double xr = std::remainder(x, period);
  if (xr == 0.0) throw SingularPointError("periodized kernel evaluated at 0");
  xr = std::fabs(xr);

  const double p = 1.0 + alpha;
  double sum = 0.0;
  for (int k = -truncation; k <= truncation; ++k)
    sum += std::pow(std::fabs(xr + period * k), -p);

  // Tail over |k| > truncation via midpoint Euler-Maclaurin; the two wings
  // combine into f(k) = (Pk + x)^-p + (Pk - x)^-p for k > truncation.
  const double m = truncation + 0.5;
  auto pw = [&](double base, double q) { return std::pow(base, -q); };
  const double a1 = period * m + xr, a2 = period * m - xr;
  const double integral = (pw(a1, alpha) + pw(a2, alpha)) / (alpha * period);
  const double f1 = -p * period * (pw(a1, p + 1.0) + pw(a2, p + 1.0));
  const double f3 = -p * (p + 1.0) * (p + 2.0) * period * period * period *
                    (pw(a1, p + 3.0) + pw(a2, p + 3.0));
  sum += integral + f1 / 24.0 - 7.0 * f3 / 5760.0;
  return sum;
}

KernelBounds kernel_bounds(const KernelSpec& k, double period) {
  KernelBounds b;
  if (k.is_singular()) {
    // minimum of the periodized kernel sits at the antipode
    b.inf = periodized_kernel_eval(k.alpha, 0.5 * period, 64, period);
    b.sup = std::numeric_limits<double>::infinity();
    b.sup_finite = false;
    return b;
  }
  const int samples = 8192;
  double lo = k.eval(0.0), hi = lo;
  for (int j = 1; j <= samples; ++j) {
    const double v = k.eval(0.5 * period * j / samples);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  b.inf = lo;
  b.sup = hi;
  return b;
}

Field tabulate(const KernelSpec& k, const PeriodicGrid& g) {
  if (k.is_singular())
    throw std::invalid_argument("tabulate: singular kernels are not tabulated");
  Field out(g);
  for (int j = 0; j < g.n; ++j) out[j] = k.eval(g.torus_distance(g.node(j), 0.0));
  return out;
}

KernelContext::KernelContext(const KernelSpec& k, const PeriodicGrid& g)
    : spec(k), grid(g) {
  if (!k.is_singular()) {
    phi_tab = tabulate(k, g);
    phi_integral = integral(phi_tab);
    if (min_value(phi_tab) <= 0.0)
      throw std::invalid_argument("bounded kernel must be strictly positive");
  } else {
    if (!(k.alpha > 0.0 && k.alpha < 2.0))
      throw std::invalid_argument("singular kernel: alpha must lie in (0,2)");
  }
}

Field commutator_force(const KernelContext& k, const Field& rho,
                       const Field& u) {
  require_same_grid(rho, u);
  if (!(rho.grid() == k.grid))
    throw std::invalid_argument("force: fields do not match kernel grid");
  const Field momentum = multiply_dealiased(rho, u);
  if (k.spec.is_singular()) {
    Field lap_m = fractional_laplacian(momentum, k.spec.alpha);
    Field lap_r = fractional_laplacian(rho, k.spec.alpha);
    Field cross = multiply_dealiased(u, lap_r);
    for (int j = 0; j < lap_m.size(); ++j) lap_m[j] -= cross[j];
    return lap_m;
  }
  Field conv_m = convolve(k.phi_tab, momentum);
  Field conv_r = convolve(k.phi_tab, rho);
  Field cross = multiply_dealiased(conv_r, u);
  for (int j = 0; j < conv_m.size(); ++j) conv_m[j] -= cross[j];
  return conv_m;
}

Field mt_normalized_force(const KernelContext& k, const Field& rho,
                          const Field& u) {
  if (k.spec.is_singular())
    throw std::invalid_argument(
        "Mostch-Tadmor normalization requires a bounded kernel");
  require_same_grid(rho, u);
  const Field conv_r = convolve(k.phi_tab, rho);
  if (min_value(conv_r) <= 0.0)
    throw DegenerateNormalizationError("phi*rho is not strictly positive");
  const Field conv_m = convolve(k.phi_tab, multiply_dealiased(rho, u));
  Field out(rho.grid());
  for (int j = 0; j < out.size(); ++j)
    out[j] = (conv_m[j] - conv_r[j] * u[j]) / conv_r[j];
  return out;
}

Field commutator_force(const KernelSpec& k, const Field& rho, const Field& u) {
  return commutator_force(KernelContext(k, rho.grid()), rho, u);
}

Field mt_normalized_force(const KernelSpec& k, const Field& rho,
                          const Field& u) {
  return mt_normalized_force(KernelContext(k, rho.grid()), rho, u);
}

KernelShape kernel_shape_from_name(const std::string& name) {
  if (name == "constant") return KernelShape::Constant;
  if (name == "offset_cosine") return KernelShape::OffsetCosine;
  if (name == "gaussian") return KernelShape::GaussianTorus;
  if (name == "algebraic") return KernelShape::AlgebraicDecay;
  throw std::invalid_argument("unknown kernel shape: " + name);
}

std::string kernel_shape_name(KernelShape s) {
  switch (s) {
    case KernelShape::Constant: return "constant";
    case KernelShape::OffsetCosine: return "offset_cosine";
    case KernelShape::GaussianTorus: return "gaussian";
    case KernelShape::AlgebraicDecay: return "algebraic";
  }
  return "?";
}

}  // namespace flock
