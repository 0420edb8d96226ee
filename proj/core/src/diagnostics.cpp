#include "flocksim/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "flocksim/spectral.hpp"

namespace flock {

namespace {

std::vector<int> support_mask(const Field& rho, double eps) {
  const double cut = eps * max_value(rho);
  std::vector<int> idx;
  for (int j = 0; j < rho.size(); ++j)
    if (rho[j] > cut) idx.push_back(j);
  if (idx.empty()) throw DegenerateSupportError("density support is empty");
  return idx;
}

}  // namespace

double velocity_diameter(const FieldState& s,
                         std::optional<double> support_eps) {
  if (!support_eps) return max_value(s.u) - min_value(s.u);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int j : support_mask(s.rho, *support_eps)) {
    if (first) {
      lo = hi = s.u[j];
      first = false;
    } else {
      lo = std::min(lo, s.u[j]);
      hi = std::max(hi, s.u[j]);
    }
  }
  return hi - lo;
}

double support_diameter(const FieldState& s, double support_eps) {
  const auto idx = support_mask(s.rho, support_eps);
  const double L = s.rho.grid().length;
  const double dx = s.rho.grid().dx();
  if (static_cast<int>(idx.size()) == s.rho.size()) return L;
  // largest empty arc between consecutive occupied nodes (cyclically)
  double largest_gap = 0.0;
  for (size_t i = 0; i < idx.size(); ++i) {
    const int a = idx[i];
    const int b = idx[(i + 1) % idx.size()];
    const double gap = dx * ((b - a + s.rho.size()) % s.rho.size());
    largest_gap = std::max(largest_gap, gap);
  }
  return L - largest_gap;
}

double free_energy(const FieldState& s, const KernelSpec& k,
                   double support_eps) {
  if (k.is_singular())
    throw std::invalid_argument("free energy requires a bounded kernel");
  const double v = velocity_diameter(s, support_eps);
  const double d = support_diameter(s, support_eps);
  // composite Simpson over [0, D]
  const int panels = 2048;
  const double h = d / (2 * panels);
  double quad = k.eval(0.0) + k.eval(d);
  for (int j = 1; j < 2 * panels; ++j)
    quad += k.eval(j * h) * (j % 2 == 1 ? 4.0 : 2.0);
  quad *= h / 3.0;
  return v + quad;
}

DerivativeNorms derivative_norms(const FieldState& s) {
  DerivativeNorms out;
  out.sup_ux = sup_norm(derivative(s.u, 1));
  out.sup_uxx = sup_norm(derivative(s.u, 2));
  out.l2_uxxx = l2_norm(derivative(s.u, 3));
  return out;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series,
                   double window_lo, double window_hi) {
  std::vector<double> ts, logs;
  for (const auto& [t, v] : series) {
    if (t < window_lo || t > window_hi) continue;
    if (!(v > 0.0))
      throw FitDomainError("fit_decay: series must be strictly positive "
                           "on the window");
    ts.push_back(t);
    logs.push_back(std::log(v));
  }
  if (ts.size() < 10)
    throw InsufficientDataError("fit_decay: need at least 10 samples");

  const size_t n = ts.size();
  double mt = 0.0, ml = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mt += ts[i];
    ml += logs[i];
  }
  mt /= n;
  ml /= n;
  double stt = 0.0, stl = 0.0, sll = 0.0;
  for (size_t i = 0; i < n; ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    stl += (ts[i] - mt) * (logs[i] - ml);
    sll += (logs[i] - ml) * (logs[i] - ml);
  }
  DecayFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.samples = static_cast<int>(n);
  const double slope = stl / stt;
  fit.rate = -slope;
  fit.amplitude = std::exp(ml - slope * mt);
  if (sll > 0.0) {
    const double ss_res = sll - stl * stl / stt;
    fit.r_squared = std::clamp(1.0 - ss_res / sll, 0.0, 1.0);
  } else {
    fit.r_squared = 0.0;  // constant series, by convention
    fit.rate = 0.0;
  }
  return fit;
}

FlockingProfile flocking_residual(const std::vector<FieldState>& snapshots,
                                  double u_bar) {
  if (snapshots.empty())
    throw std::invalid_argument("flocking_residual: empty trajectory");
  FlockingProfile out;
  out.u_bar = u_bar;
  std::vector<Field> shifted;
  shifted.reserve(snapshots.size());
  for (const auto& s : snapshots) shifted.push_back(shift(s.rho, s.t * u_bar));
  out.rho_infinity = shifted.back();
  for (size_t i = 0; i < snapshots.size(); ++i) {
    double r = 0.0;
    for (int j = 0; j < out.rho_infinity.size(); ++j)
      r = std::max(r, std::fabs(shifted[i][j] - out.rho_infinity[j]));
    out.residual_series.emplace_back(snapshots[i].t, r);
  }
  return out;
}

ThresholdClassification threshold_classify(const FieldState& s0,
                                           const KernelContext& k) {
  if (k.spec.is_singular())
    throw std::invalid_argument("threshold classification needs a bounded kernel");
  const Field e0 = compute_e(s0, k, EConvention::Threshold);
  ThresholdClassification out;
  out.min_e0 = min_value(e0);
  out.subcritical = out.min_e0 > 0.0;
  return out;
}

double q_extremum(const FieldState& s, const KernelContext& k) {
  if (!(min_value(s.rho) > 0.0))
    throw VacuumError("q_extremum: density touches vacuum");
  const Field e = compute_e(s, k, EConvention::Transport);
  double q = 0.0;
  for (int j = 0; j < e.size(); ++j)
    q = std::max(q, std::fabs(e[j] / s.rho[j]));
  return q;
}

double enhancement_ratio(const Field& u, double alpha) {
  const Field up = derivative(u, 1);
  const double sup = sup_norm(up);
  if (!(sup > 0.0))
    throw std::invalid_argument("enhancement_ratio: u is constant");
  const double v = max_value(u) - min_value(u);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < u.size(); ++j) {
    if (std::fabs(up[j]) <= 0.1 * sup) continue;
    const double d = dissipation_pointwise(up, derivative(up, 1), j, alpha);
    best = std::min(best, d * v / std::pow(std::fabs(up[j]), 3.0));
  }
  return best;
}

DiagnosticsRecord measure(const FieldState& s, const KernelContext& k,
                          EConvention e_conv, bool line_emulation,
                          double support_eps) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.mass = mean(s.rho);
  {
    double p = 0.0;
    for (int j = 0; j < s.rho.size(); ++j) p += s.rho[j] * s.total_u(j);
    r.momentum = p / s.rho.size();
  }
  r.velocity_diameter = line_emulation
                            ? velocity_diameter(s, support_eps)
                            : velocity_diameter(s);
  if (line_emulation) {
    r.support_diameter = support_diameter(s, support_eps);
    if (!k.spec.is_singular())
      r.free_energy = free_energy(s, k.spec, support_eps);
  }
  const Field e = compute_e(s, k, e_conv);
  r.min_e = min_value(e);
  r.max_e = max_value(e);
  r.min_rho = min_value(s.rho);
  r.max_rho = max_value(s.rho);
  if (k.spec.is_singular() && r.min_rho > 0.0) r.q_extremum = q_extremum(s, k);
  const DerivativeNorms dn = derivative_norms(s);
  r.sup_ux = dn.sup_ux;
  r.sup_uxx = dn.sup_uxx;
  r.l2_uxxx = dn.l2_uxxx;
  return r;
}

}  // namespace flock
