#include "flocksim/dynamics.hpp"

#include <cmath>

#include "flocksim/spectral.hpp"

namespace flock {

Field compute_e(const FieldState& s, const KernelContext& k, EConvention conv) {
  Field e = derivative(s.u, 1);
  if (k.spec.is_singular()) {
    const Field lap = fractional_laplacian(s.rho, k.spec.alpha);
    for (int j = 0; j < e.size(); ++j) e[j] += lap[j];
    return e;
  }
  const Field conv_r = convolve(k.phi_tab, s.rho);
  if (conv == EConvention::Threshold) {
    for (int j = 0; j < e.size(); ++j) e[j] += conv_r[j];
  } else {
    for (int j = 0; j < e.size(); ++j)
      e[j] += conv_r[j] - k.phi_integral * s.rho[j];
  }
  return e;
}

Rhs rhs(const FieldState& s, const KernelContext& k) {
  Rhs out{Field(s.rho.grid()), Field(s.rho.grid())};
  // d rho/dt = -(rho (u_bulk + u))_x
  const Field momentum = multiply_dealiased(s.rho, s.u);
  out.drho = derivative(momentum, 1);
  if (s.u_bulk != 0.0) {
    const Field rho_x = derivative(s.rho, 1);
    for (int j = 0; j < out.drho.size(); ++j)
      out.drho[j] += s.u_bulk * rho_x[j];
  }
  for (double& v : out.drho.values()) v = -v;

  const Field ux = derivative(s.u, 1);
  Field advect = multiply_dealiased(s.u, ux);
  if (s.u_bulk != 0.0)
    for (int j = 0; j < advect.size(); ++j) advect[j] += s.u_bulk * ux[j];
  // The alignment force annihilates constant velocities, so evaluate it on
  // the fluctuation u - mean(u): the residual rounding noise then scales
  // with the fluctuation itself instead of with the bulk velocity, and the
  // decay of the velocity diameter stays clean down to denormal range.
  Field w = s.u;
  const double u_mean = mean(s.u);
  for (double& v : w.values()) v -= u_mean;
  Field force = (k.spec.variant == KernelVariant::MostschTadmor)
                    ? mt_normalized_force(k, s.rho, w)
                    : commutator_force(k, s.rho, w);
  for (int j = 0; j < out.du.size(); ++j) out.du[j] = -advect[j] + force[j];
  return out;
}

double stable_dt(const FieldState& s, const KernelContext& k,
                 const StepControl& ctl) {
  const double dx = s.rho.grid().dx();
  const double eps = 1e-12;
  double dt = ctl.dt_max;
  dt = std::min(dt, ctl.cfl_advective * dx /
                        (sup_norm(s.u) + std::fabs(s.u_bulk) + eps));
  if (k.spec.is_singular()) {
    const double c_a = fractional_symbol_constant(k.spec.alpha);
    const double rho_max = std::max(max_value(s.rho), eps);
    dt = std::min(dt, ctl.cfl_dissipative * std::pow(dx, k.spec.alpha) /
                          (c_a * rho_max));
  }
  return dt;
}

namespace {

FieldState euler_update(const FieldState& base, const FieldState& from,
                        const Rhs& slope, double dt, double w_from,
                        double w_slope) {
  // state = w_from * base + (1 - w_from) * from ... Shu-Osher convex form:
  // result = w_from * base + (1-w_from) * (from + dt_eff * slope) with
  // dt_eff folded into w_slope below.
  FieldState out{Field(base.rho.grid()), Field(base.rho.grid()), base.t,
                 base.u_bulk};
  for (int j = 0; j < out.rho.size(); ++j) {
    out.rho[j] = w_from * base.rho[j] +
                 (1.0 - w_from) * from.rho[j] + w_slope * dt * slope.drho[j];
    out.u[j] = w_from * base.u[j] +
               (1.0 - w_from) * from.u[j] + w_slope * dt * slope.du[j];
  }
  return out;
}

}  // namespace

StepResult step(const FieldState& s, const KernelContext& k, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  // SSP-RK3 (Shu-Osher):
  //   u1 = u + dt f(u)
  //   u2 = 3/4 u + 1/4 (u1 + dt f(u1))
  //   u3 = 1/3 u + 2/3 (u2 + dt f(u2))
  const Rhs k1 = rhs(s, k);
  FieldState s1 = euler_update(s, s, k1, dt, 0.0, 1.0);
  const Rhs k2 = rhs(s1, k);
  FieldState s2 = euler_update(s, s1, k2, dt, 0.75, 0.25);
  const Rhs k3 = rhs(s2, k);
  FieldState s3 = euler_update(s, s2, k3, dt, 1.0 / 3.0, 2.0 / 3.0);
  s3.t = s.t + dt;
  // Re-center: move the mean of the fluctuation into the bulk scalar. This
  // is an exact change of representation of the same total velocity.
  const double m = mean(s3.u);
  if (std::isfinite(m)) {
    s3.u_bulk += m;
    for (double& v : s3.u.values()) v -= m;
  }

  StepResult out{std::move(s3), std::nullopt};
  if (!all_finite(out.state.rho) || !all_finite(out.state.u)) {
    double norm = 0.0;
    for (double v : out.state.u.values())
      if (std::isfinite(v)) norm = std::max(norm, std::fabs(v));
    out.blowup = BlowupInfo{out.state.t, "non-finite field values", norm};
  }
  return out;
}

}  // namespace flock
