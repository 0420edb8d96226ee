#include "flocksim/simulate.hpp"

#include <cmath>

#include "flocksim/spectral.hpp"

namespace flock {

Trajectory run(const FieldState& initial, const KernelSpec& kernel,
               const RunConfig& cfg) {
  const KernelContext kctx(kernel, initial.rho.grid());
  Trajectory traj;

  auto record = [&](const FieldState& s) {
    traj.snapshots.push_back(s);
    traj.records.push_back(measure(s, kctx, cfg.e_convention,
                                   cfg.line_emulation, cfg.support_eps));
  };

  FieldState state = initial;
  {  // carry the mean velocity in the bulk scalar from the start
    const double m = mean(state.u);
    state.u_bulk += m;
    for (double& v : state.u.values()) v -= m;
  }
  record(state);
  if (cfg.ctl.t_end <= state.t) return traj;

  const double ux0 = std::max(sup_norm(derivative(state.u, 1)), 1e-12);
  double next_output = state.t + cfg.cadence;

  while (state.t < cfg.ctl.t_end) {
    double dt = stable_dt(state, kctx, cfg.ctl);
    // land exactly on the next output time and on t_end
    const double target = std::min(next_output, cfg.ctl.t_end);
    if (state.t + dt >= target - 1e-14) dt = target - state.t;
    if (!(dt > 0.0)) dt = 1e-14;

    StepResult res = step(state, kctx, dt);
    state = std::move(res.state);
    if (res.blowup) {
      traj.blowup = res.blowup;
      break;
    }
    const double ux = sup_norm(derivative(state.u, 1));
    if (ux > cfg.blowup_gradient_factor * ux0) {
      traj.blowup = BlowupInfo{state.t, "gradient blow-up", ux};
      break;
    }
    if (min_value(state.rho) < -cfg.rho_negative_tol) {
      // Spectral undershoot beyond tolerance: the density has left the
      // admissible cone, the discrete signature of a developing gradient
      // singularity.
      traj.blowup = BlowupInfo{state.t, "density positivity lost",
                               -min_value(state.rho)};
      break;
    }

    if (state.t >= target - 1e-14) {
      record(state);
      if (target >= cfg.ctl.t_end - 1e-14) break;
      next_output += cfg.cadence;
    }
  }
  return traj;
}

}  // namespace flock
