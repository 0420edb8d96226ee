#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "flocksim/dynamics.hpp"

namespace flock {

/// One row of per-time measurements. Optional entries are only present in
/// the modes where they make sense (D and free energy: line emulation;
/// Q: singular runs away from vacuum).
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;          // M = (1/L) int rho
  double momentum = 0.0;      // P = (1/L) int rho u
  double velocity_diameter = 0.0;
  std::optional<double> support_diameter;
  double min_e = 0.0, max_e = 0.0;
  double min_rho = 0.0, max_rho = 0.0;
  std::optional<double> q_extremum;
  double sup_ux = 0.0, sup_uxx = 0.0, l2_uxxx = 0.0;
  std::optional<double> flock_residual;  // filled in after the run
  std::optional<double> free_energy;
};

struct DecayFit {
  double rate = 0.0;       // delta: the fitted e^{-delta t} rate
  double amplitude = 0.0;  // C
  double window_lo = 0.0, window_hi = 0.0;
  double r_squared = 0.0;
  int samples = 0;
};

struct FlockingProfile {
  double u_bar = 0.0;
  Field rho_infinity;
  std::vector<std::pair<double, double>> residual_series;  // (t, sup residual)
};

struct DegenerateSupportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VacuumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FitDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// max u - min u over grid nodes. When support_eps is given, restricted to
/// the set {rho > support_eps * max rho} (line-emulation mode).
double velocity_diameter(const FieldState& s,
                         std::optional<double> support_eps = std::nullopt);

/// Diameter of {rho > eps * max rho}: L minus the largest empty arc.
double support_diameter(const FieldState& s, double support_eps);

/// V(t) + int_0^{D(t)} phi(s) ds (line emulation, decreasing phi).
double free_energy(const FieldState& s, const KernelSpec& k, double support_eps);

struct DerivativeNorms {
  double sup_ux = 0.0;
  double sup_uxx = 0.0;
  double l2_uxxx = 0.0;
};
DerivativeNorms derivative_norms(const FieldState& s);

/// Least-squares line on (t, log value) over the window; rate = -slope.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series,
                   double window_lo, double window_hi);

/// Shifts each density snapshot by t * u_bar and measures sup-norm distance
/// to the final shifted snapshot (the flocking-profile estimator).
FlockingProfile flocking_residual(const std::vector<FieldState>& snapshots,
                                  double u_bar);

struct ThresholdClassification {
  double min_e0 = 0.0;
  bool subcritical = false;
};
/// e0 = u0' + phi*rho0 (bounded kernels); subcritical iff min e0 > 0.
ThresholdClassification threshold_classify(const FieldState& s0,
                                           const KernelContext& k);

/// max |e / rho| with e in the transport convention; requires min rho > 0.
double q_extremum(const FieldState& s, const KernelContext& k);

/// min over {|u'| > 0.1 sup|u'|} of D u'(x) V / |u'(x)|^3; positive and
/// invariant under u -> lambda u and grid translations.
double enhancement_ratio(const Field& u, double alpha);

/// Full record for one snapshot (flock_residual left unset).
DiagnosticsRecord measure(const FieldState& s, const KernelContext& k,
                          EConvention e_conv, bool line_emulation,
                          double support_eps);

}  // namespace flock
