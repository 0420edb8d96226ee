#include "flocksim/agents.hpp"

#include <cmath>
#include <numeric>

#include "flocksim/spectral.hpp"

namespace flock {

namespace {

template <class Phi>
void accumulate_forces(const AgentState& s, Phi&& phi, CsNormalization norm,
                       std::vector<double>& dv) {
  const int n = s.count();
  const double L = s.length;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0, weight_sum = 0.0;
    const double xi = s.x[i], vi = s.v[i];
    for (int j = 0; j < n; ++j) {
      double d = xi - s.x[j];
      d -= L * std::nearbyint(d / L);
      const double w = phi(i, j, std::fabs(d));
      acc += w * (s.v[j] - vi);
      weight_sum += w;
    }
    dv[i] = (norm == CsNormalization::Mean) ? acc / n : acc / weight_sum;
  }
}

}  // namespace

AgentRhs cs_rhs(const AgentState& s, const KernelSpec& k,
                CsNormalization norm) {
  if (k.is_singular())
    throw UnsupportedKernelError(
        "the particle model is not defined for singular kernels");
  AgentRhs out;
  out.dx = s.v;
  out.dv.assign(s.count(), 0.0);

  const bool two_pi = std::fabs(s.length - kTwoPi) < 1e-12;
  if (k.shape == KernelShape::OffsetCosine && two_pi) {
    // On the 2 pi torus, cos of the nearest-image distance is
    // cos(x_i - x_j) = c_i c_j + s_i s_j, so the pair sums factor into five
    // global reductions and the force is evaluated in O(N).
    const int n = s.count();
    const double a = k.p0, b = k.p1;
    std::vector<double> c(n), sn(n);
    double sum_c = 0.0, sum_s = 0.0, sum_v = 0.0, sum_cv = 0.0, sum_sv = 0.0;
    for (int i = 0; i < n; ++i) {
      c[i] = std::cos(s.x[i]);
      sn[i] = std::sin(s.x[i]);
      sum_c += c[i];
      sum_s += sn[i];
      sum_v += s.v[i];
      sum_cv += c[i] * s.v[i];
      sum_sv += sn[i] * s.v[i];
    }
    for (int i = 0; i < n; ++i) {
      const double acc = a * (sum_v - n * s.v[i]) +
                         b * (c[i] * sum_cv + sn[i] * sum_sv -
                              s.v[i] * (c[i] * sum_c + sn[i] * sum_s));
      const double weight = a * n + b * (c[i] * sum_c + sn[i] * sum_s);
      out.dv[i] = (norm == CsNormalization::Mean) ? acc / n : acc / weight;
    }
    return out;
  }
  accumulate_forces(
      s, [&](int, int, double r) { return k.eval(r); }, norm, out.dv);
  return out;
}

AgentState agents_step(const AgentState& s, const KernelSpec& k, double dt,
                       CsNormalization norm) {
  if (!(dt > 0.0)) throw std::invalid_argument("agents_step: dt must be > 0");
  const int n = s.count();
  auto advance = [&](const AgentState& base, const AgentRhs& slope,
                     double h) {
    AgentState out = base;
    for (int i = 0; i < n; ++i) {
      out.x[i] = s.x[i] + h * slope.dx[i];
      out.v[i] = s.v[i] + h * slope.dv[i];
    }
    return out;
  };
  const AgentRhs k1 = cs_rhs(s, k, norm);
  const AgentRhs k2 = cs_rhs(advance(s, k1, 0.5 * dt), k, norm);
  const AgentRhs k3 = cs_rhs(advance(s, k2, 0.5 * dt), k, norm);
  const AgentRhs k4 = cs_rhs(advance(s, k3, dt), k, norm);
  AgentState out = s;
  out.t = s.t + dt;
  const double L = s.length;
  for (int i = 0; i < n; ++i) {
    out.x[i] = s.x[i] + dt / 6.0 *
                            (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] +
                             k4.dx[i]);
    out.x[i] -= L * std::floor(out.x[i] / L);
    out.v[i] = s.v[i] + dt / 6.0 *
                            (k1.dv[i] + 2.0 * k2.dv[i] + 2.0 * k3.dv[i] +
                             k4.dv[i]);
  }
  return out;
}

namespace {

double van_der_corput(unsigned i) {
  double x = 0.0, base = 0.5;
  while (i != 0) {
    if (i & 1u) x += base;
    base *= 0.5;
    i >>= 1;
  }
  return x;
}

double seed_offset(unsigned seed) {
  // splitmix64 scrambling, mapped to [0,1)
  unsigned long long z = seed + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

AgentState sample_agents(const Field& rho0, const Field& u0, int count,
                         unsigned seed) {
  require_same_grid(rho0, u0);
  if (count < 1) throw std::invalid_argument("sample_agents: count must be >= 1");
  const auto& g = rho0.grid();
  // trapezoid CDF on the grid nodes (node n wraps to node 0)
  std::vector<double> cdf(g.n + 1, 0.0);
  for (int j = 0; j < g.n; ++j) {
    const double a = rho0[j];
    const double b = rho0[(j + 1) % g.n];
    if (a < 0.0 || b < 0.0)
      throw std::invalid_argument("sample_agents: rho0 must be nonnegative");
    cdf[j + 1] = cdf[j] + 0.5 * (a + b) * g.dx();
  }
  const double total = cdf[g.n];
  if (!(total > 0.0))
    throw std::invalid_argument("sample_agents: rho0 has zero mass");

  AgentState s;
  s.length = g.length;
  s.x.resize(count);
  s.v.resize(count);
  const double offset = seed_offset(seed);
  for (int i = 0; i < count; ++i) {
    double q = van_der_corput(static_cast<unsigned>(i)) + offset;
    q -= std::floor(q);
    const double target = q * total;
    // cdf is nondecreasing; locate the cell then invert linearly
    int lo = 0, hi = g.n;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (cdf[mid] <= target ? lo : hi) = mid;
    }
    const double seg = cdf[lo + 1] - cdf[lo];
    const double frac = seg > 0.0 ? (target - cdf[lo]) / seg : 0.5;
    s.x[i] = g.wrap(g.node(lo) + frac * g.dx());
    s.v[i] = interpolate(u0, s.x[i]);
  }
  return s;
}

std::pair<Field, Field> empirical_moments(const AgentState& s,
                                          const PeriodicGrid& grid,
                                          double mollifier_width) {
  if (mollifier_width < 2.0 * grid.dx())
    throw UnderResolvedError("mollifier width must be at least 2 dx");
  const double L = grid.length;
  const double w = mollifier_width;
  const double norm = 1.0 / (w * std::sqrt(kTwoPi));
  const int images = std::max(1, static_cast<int>(std::ceil(6.0 * w / L)));
  Field rho(grid), mom(grid);
  for (int i = 0; i < s.count(); ++i) {
    for (int j = 0; j < grid.n; ++j) {
      double d = grid.node(j) - s.x[i];
      d -= L * std::nearbyint(d / L);
      double psi = 0.0;
      for (int k = -images; k <= images; ++k) {
        const double z = d + L * k;
        psi += norm * std::exp(-z * z / (2.0 * w * w));
      }
      rho[j] += psi;
      mom[j] += psi * s.v[i];
    }
  }
  const double scale = L / s.count();
  for (int j = 0; j < grid.n; ++j) {
    rho[j] *= scale;
    mom[j] *= scale;
  }
  return {std::move(rho), std::move(mom)};
}

}  // namespace flock
