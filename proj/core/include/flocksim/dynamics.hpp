#pragma once

#include <optional>
#include <string>

#include "flocksim/kernels.hpp"

namespace flock {

/// Hydrodynamic state (rho, u) at time t. The velocity is carried as a
/// bulk scalar plus a fluctuation field (total velocity = u_bulk + u);
/// step() re-centers the fluctuation every step, so its decay toward a
/// flocking state stays multiplicative instead of stalling at the
/// rounding floor of the bulk velocity. u_bulk = 0 is always a valid
/// representation.
struct FieldState {
  Field rho;
  Field u;
  double t = 0.0;
  double u_bulk = 0.0;

  double total_u(int j) const { return u_bulk + u[j]; }
};

struct StepControl {
  double cfl_advective = 0.4;
  double cfl_dissipative = 0.35;
  double dt_max = 0.01;
  double t_end = 10.0;

  bool operator==(const StepControl&) const = default;
};

/// Which first-order quantity e drives diagnostics:
///   Transport:  e = u_x + L_phi(rho), with zero-mean L_phi = phi*rho - (int phi) rho
///   Threshold:  e = u_x + phi*rho (bounded kernels; the critical-threshold form)
/// The two coincide for singular kernels.
enum class EConvention { Transport, Threshold };

Field compute_e(const FieldState& s, const KernelContext& k, EConvention conv);

struct Rhs {
  Field drho;
  Field du;
};

/// drho/dt = -(rho u)_x, du/dt = -u u_x + F (commutator or MT force).
Rhs rhs(const FieldState& s, const KernelContext& k);

/// min(dt_max, cfl_a dx / (max|u| + eps), cfl_d dx^alpha / (c_alpha max rho));
/// the dissipative clause applies to singular kernels only.
double stable_dt(const FieldState& s, const KernelContext& k,
                 const StepControl& ctl);

struct BlowupInfo {
  double t = 0.0;
  std::string what;
  double norm = 0.0;
};

struct StepResult {
  FieldState state;
  std::optional<BlowupInfo> blowup;  // non-finite output detected
};

/// One three-stage strong-stability-preserving Runge-Kutta step.
StepResult step(const FieldState& s, const KernelContext& k, double dt);

}  // namespace flock
