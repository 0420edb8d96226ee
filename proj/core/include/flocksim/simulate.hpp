#pragma once

#include "flocksim/diagnostics.hpp"

namespace flock {

struct RunConfig {
  StepControl ctl;
  double cadence = 0.1;               // diagnostics/snapshot spacing
  EConvention e_convention = EConvention::Threshold;
  bool line_emulation = false;
  double support_eps = 1e-4;
  double blowup_gradient_factor = 1e3;  // sup|u_x| > factor * initial => blow-up
  double rho_negative_tol = 1e-10;      // spectral undershoot allowance
};

struct Trajectory {
  std::vector<FieldState> snapshots;          // at output cadence
  std::vector<DiagnosticsRecord> records;     // one per snapshot
  std::optional<BlowupInfo> blowup;
  std::optional<std::string> abort_reason;    // resolution failure etc.
};

/// Integrates to t_end or blow-up with stability-limited explicit steps,
/// recording diagnostics at the configured cadence. Deterministic for a
/// fixed configuration.
Trajectory run(const FieldState& initial, const KernelSpec& kernel,
               const RunConfig& cfg);

}  // namespace flock
