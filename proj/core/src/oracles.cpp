#include "flocksim/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace flock::oracle {

double TrigPoly::eval(const double x) const {
  double s = a0;
  for (int k = 1; k <= degree(); ++k)
    s += a[k - 1] * std::cos(k * x) + b[k - 1] * std::sin(k * x);
  return s;
}

double TrigPoly::derivative(const double x, const int order) const {
  if (order < 0) throw std::invalid_argument("TrigPoly: negative order");
  if (order == 0) return eval(x);
  double s = 0.0;
  for (int k = 1; k <= degree(); ++k) {
    const double kn = std::pow(static_cast<double>(k), order);
    // d/dx rotates (cos, sin) -> (-sin, cos); four-cycle in the order.
    const double c = a[k - 1], d = b[k - 1];
    switch (order % 4) {
      case 0: s += kn * (c * std::cos(k * x) + d * std::sin(k * x)); break;
      case 1: s += kn * (-c * std::sin(k * x) + d * std::cos(k * x)); break;
      case 2: s += kn * (-c * std::cos(k * x) - d * std::sin(k * x)); break;
      case 3: s += kn * (c * std::sin(k * x) - d * std::cos(k * x)); break;
    }
  }
  return s;
}

Field TrigPoly::sample(const PeriodicGrid& g) const {
  return Field::sample(g, [this](double x) { return eval(x); });
}

double symbol_constant_closed_form(const double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("alpha must lie in (0, 2)");
  if (std::fabs(alpha - 1.0) < 1e-12) return M_PI;
  return 2.0 * std::cos(M_PI * alpha / 2.0) * std::tgamma(2.0 - alpha) /
         (alpha * (1.0 - alpha));
}

namespace {

/// Hurwitz zeta(s, q) for s > 1, q in (0, 1], by Euler-Maclaurin.
double hurwitz_zeta(const double s, const double q) {
  constexpr int N = 30;
  // B_{2j} for j = 1..6
  constexpr double bern[] = {1.0 / 6,  -1.0 / 30, 1.0 / 42,
                             -1.0 / 30, 5.0 / 66,  -691.0 / 2730};
  double sum = 0.0;
  for (int k = 0; k < N; ++k) sum += std::pow(q + k, -s);
  const double qn = q + N;
  sum += std::pow(qn, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(qn, -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double fact = 2.0;  // (2j)!
  for (int j = 1; j <= 6; ++j) {
    sum += bern[j - 1] / fact * rising * std::pow(qn, -s - 2.0 * j + 1.0);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

}  // namespace

double periodized_kernel_direct(const double alpha, const double x,
                                const double period) {
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  if (y == 0.0) throw std::invalid_argument("singular point x = 0");
  const double q = y / period;
  if (std::fabs(alpha - 1.0) < 1e-14 &&
      std::fabs(period - kTwoPi) < 1e-14) {
    const double s = std::sin(0.5 * y);
    return 0.25 / (s * s);
  }
  const double s = 1.0 + alpha;
  return std::pow(period, -s) * (hurwitz_zeta(s, q) + hurwitz_zeta(s, 1.0 - q));
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGx[] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGw[] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

/// int_A^inf cos(k z) z^{-1-alpha} dz by four integrations by parts.
double cosine_tail(const double k, const double A, const double alpha) {
  const double s0 = std::sin(k * A), c0 = std::cos(k * A);
  double w[4];  // w^{(j)}(A) for w(z) = z^{-1-alpha}
  double p = 1.0, e = -1.0 - alpha;
  for (int j = 0; j < 4; ++j) {
    w[j] = p * std::pow(A, e);
    p *= e;
    e -= 1.0;
  }
  const double k2 = k * k;
  return -s0 * w[0] / k - c0 * w[1] / k2 + s0 * w[2] / (k2 * k) +
         c0 * w[3] / (k2 * k2);
}

}  // namespace

double fractional_laplacian_direct(const TrigPoly& f, const double alpha,
                                   const double x) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("alpha must lie in (0, 2)");
  const double z0 = 0.1;
  const double A = 200.0;

  // Taylor series on [0, z0]: f(x+z) + f(x-z) - 2 f(x) =
  //   2 sum_m f^{(2m)}(x) z^{2m} / (2m)!
  double result = 0.0;
  double fact = 2.0;  // (2m)!
  for (int m = 1; m <= 8; ++m) {
    result += 2.0 * f.derivative(x, 2 * m) / fact *
              std::pow(z0, 2.0 * m - alpha) / (2.0 * m - alpha);
    fact *= (2.0 * m + 1.0) * (2.0 * m + 2.0);
  }

  // Graded Gauss-Legendre panels on [z0, A].
  const double fx2 = 2.0 * f.eval(x);
  double lo = z0;
  while (lo < A) {
    const double width = std::min({0.4, 0.2 * lo + 0.01, A - lo});
    const double hi = lo + width;
    const double mid = 0.5 * (lo + hi), half = 0.5 * width;
    for (int i = 0; i < 16; ++i) {
      const double z = mid + half * kGx[i];
      result += half * kGw[i] * (f.eval(x + z) + f.eval(x - z) - fx2) *
                std::pow(z, -1.0 - alpha);
    }
    lo = hi;
  }

  // Per-mode analytic tail beyond A.
  for (int k = 1; k <= f.degree(); ++k) {
    const double mk =
        f.a[k - 1] * std::cos(k * x) + f.b[k - 1] * std::sin(k * x);
    if (mk == 0.0) continue;
    result += 2.0 * mk *
              (cosine_tail(static_cast<double>(k), A, alpha) -
               std::pow(A, -alpha) / alpha);
  }
  return result;
}

namespace {

Field direct_force(const KernelSpec& k, const Field& rho, const Field& u,
                   const bool normalize) {
  require_same_grid(rho, u);
  if (k.is_singular())
    throw std::invalid_argument("direct force oracle: bounded kernels only");
  const auto& g = rho.grid();
  Field out(g);
  for (int i = 0; i < g.n; ++i) {
    double acc = 0.0, weight = 0.0;
    for (int j = 0; j < g.n; ++j) {
      const double w = k.eval(g.torus_distance(g.node(i), g.node(j)));
      acc += w * (u[j] - u[i]) * rho[j];
      weight += w * rho[j];
    }
    out[i] = normalize ? acc / weight : acc * g.dx();
  }
  return out;
}

}  // namespace

Field commutator_force_direct(const KernelSpec& k, const Field& rho,
                              const Field& u) {
  return direct_force(k, rho, u, false);
}

Field mt_normalized_force_direct(const KernelSpec& k, const Field& rho,
                                 const Field& u) {
  return direct_force(k, rho, u, true);
}

double dissipation_direct(const TrigPoly& g, const double alpha,
                          const double x, const int resolution,
                          const double period) {
  if (resolution < 1024 || resolution % 2 != 0)
    throw std::invalid_argument("dissipation_direct: resolution too coarse");
  const double L = period;
  const double h = L / resolution;
  const double gx = g.eval(x);

  // Periodized kernel by direct image sum plus an integral tail.
  constexpr int K = 128;
  auto phi_per = [&](double z) {
    double s = 0.0;
    for (int m = -K; m <= K; ++m)
      s += std::pow(std::fabs(z + L * m), -1.0 - alpha);
    const double edge = (K + 0.5) * L;
    s += (std::pow(edge + z, -alpha) + std::pow(edge - z, -alpha)) /
         (alpha * L);
    return s;
  };

  // Midpoint cells over (-L/2, L/2], skipping the two cells flanking z = 0.
  double result = 0.0;
  for (int m = 0; m < resolution; ++m) {
    const double z = -0.5 * L + (m + 0.5) * h;
    if (std::fabs(z) < h) continue;
    const double d = gx - g.eval(x + z);
    result += d * d * phi_per(z) * h;
  }

  // Taylor series for the center cells [-h, h].
  const double g1 = g.derivative(x, 1);
  const double g2 = g.derivative(x, 2);
  const double g3 = g.derivative(x, 3);
  result += 2.0 * g1 * g1 * std::pow(h, 2.0 - alpha) / (2.0 - alpha);
  result += 2.0 * (0.25 * g2 * g2 + g1 * g3 / 3.0) *
            std::pow(h, 4.0 - alpha) / (4.0 - alpha);
  return result;
}

TwoBody two_body_constant_kernel(const double phi0, const TwoBody& init,
                                 const double t, const double length) {
  const double vbar = 0.5 * (init.v1 + init.v2);
  const double w0 = init.v1 - init.v2;
  const double decay = std::exp(-phi0 * t);
  const double drift = 0.5 * w0 * (1.0 - decay) / phi0;
  auto wrap = [&](double y) {
    y = std::fmod(y, length);
    return y < 0.0 ? y + length : y;
  };
  TwoBody out;
  out.v1 = vbar + 0.5 * w0 * decay;
  out.v2 = vbar - 0.5 * w0 * decay;
  out.x1 = wrap(init.x1 + vbar * t + drift);
  out.x2 = wrap(init.x2 + vbar * t - drift);
  return out;
}

}  // namespace flock::oracle
