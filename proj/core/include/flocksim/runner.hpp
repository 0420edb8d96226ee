#pragma once

#include <filesystem>
#include <vector>

#include "flocksim/scenario.hpp"
#include "flocksim/simulate.hpp"

namespace flock {

inline constexpr const char* kDiagnosticsHeader =
    "t,M,P,V,D,min_e,max_e,min_rho,max_rho,Q,sup_ux,sup_uxx,l2_uxxx,"
    "flock_residual,free_energy";
inline constexpr const char* kSummarySchemaVersion = "flocksim-summary/1";
inline constexpr const char* kOutputDirEnvVar = "FLOCKSIM_OUTPUT_DIR";

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBlowup = 2;

struct RunArtifacts {
  int exit_code = kExitClean;
  std::filesystem::path directory;
  Trajectory trajectory;
  std::string summary_json;  // also written to summary.json
};

/// Output directory for a scenario, honoring the FLOCKSIM_OUTPUT_DIR
/// environment override.
std::filesystem::path resolve_output_directory(const Scenario& s);

/// One CSV row in the fixed diagnostics column order (17 significant
/// digits; unset optional fields serialize as empty).
std::string diagnostics_csv_row(const DiagnosticsRecord& r);

/// Integrates the scenario, writes diagnostics.csv, summary.json, and
/// optionally snapshots.csv / agents.csv into the output directory.
/// Throws on configuration or I/O errors (exit code 1 at the CLI);
/// blow-up is reported through exit_code = 2, not an exception.
RunArtifacts run_scenario(const Scenario& s);

struct SweepRow {
  double value = 0.0;
  int exit_code = kExitClean;
  DecayFit v_fit;
  double mass_residual = 0.0;      // |dM| / M
  double momentum_residual = 0.0;  // |dP|
};

struct SweepResult {
  int exit_code = kExitClean;  // worst row outcome
  std::filesystem::path aggregate_csv;
  std::vector<SweepRow> rows;  // ordered by value
};

/// Runs the template once per value of the swept axis; each run writes to
/// its own subdirectory and the aggregate CSV collects the headline fits.
SweepResult run_sweep(const Scenario& templ, const std::string& axis,
                      std::vector<double> values);

}  // namespace flock
