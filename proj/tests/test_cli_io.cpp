#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "flocksim/runner.hpp"

using namespace flock;
namespace fs = std::filesystem;

namespace {

const char* kMinimalScenario = R"(
[grid]
n = 64

[kernel]
variant = bounded
shape = offset_cosine
p0 = 2
p1 = 1

[initial]
name = perturbed_constant

[step]
t_end = 0.5
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("flocksim_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

Scenario random_scenario(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(0.1, 3.0);
  std::uniform_int_distribution<int> pick(0, 2);
  Scenario s;
  s.n = 64 << pick(rng);
  s.length = kTwoPi * (1 + pick(rng));
  switch (pick(rng)) {
    case 0:
      s.kernel = KernelSpec::bounded(KernelShape::OffsetCosine, 1.0 + U(rng), 1.0);
      break;
    case 1:
      s.kernel = KernelSpec::mostsch_tadmor(KernelShape::GaussianTorus, U(rng));
      break;
    default:
      s.kernel = KernelSpec::singular(1.0 + 0.3 * pick(rng));
      break;
  }
  s.initial.mass = U(rng) * 4;
  s.initial.rho_amp = 0.3 * U(rng) / 3.0;
  s.initial.u_amp = U(rng) / 10;
  s.initial.u_phase = U(rng);
  s.step.t_end = U(rng);
  s.step.dt_max = 0.002 + 0.001 * U(rng);
  s.output.cadence = 0.05 + 0.01 * pick(rng);
  s.output.directory = "some/dir";
  s.output.snapshots = pick(rng) == 0;
  s.agents.enabled = pick(rng) == 0 && !s.kernel.is_singular();
  s.agents.count = 100 + 10 * pick(rng);
  s.agents.seed = 1 + pick(rng);
  return s;
}

}  // namespace

TEST_CASE("minimal scenario parses with documented defaults") {
  Scenario s = parse_scenario(kMinimalScenario);
  CHECK(s.n == 64);
  CHECK(s.length == doctest::Approx(kTwoPi));
  CHECK(s.kernel == KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0));
  CHECK(s.initial.name == "perturbed_constant");
  CHECK(s.initial.mass == doctest::Approx(kTwoPi));
  CHECK(s.step.t_end == 0.5);
  CHECK(s.output.cadence == 0.1);
  CHECK(s.mode == DomainMode::Torus);
  // Threshold convention is the bounded-kernel default.
  CHECK(s.e_convention() == EConvention::Threshold);
}

TEST_CASE("singular kernels default to the transport e-convention") {
  Scenario s = parse_scenario(R"(
[grid]
n = 64
[kernel]
variant = singular
alpha = 1.5
[initial]
name = perturbed_constant
[step]
t_end = 0.1
)");
  CHECK(s.kernel.is_singular());
  CHECK(s.e_convention() == EConvention::Transport);
}

TEST_CASE("out-of-range alpha is rejected naming the field and line") {
  const std::string text = R"(
[grid]
n = 64
[kernel]
variant = singular
alpha = 2.5
[initial]
name = perturbed_constant
[step]
t_end = 0.1
)";
  try {
    parse_scenario(text);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].message.find("alpha") != std::string::npos);
    CHECK(e.issues()[0].line == 6);
  }
}

TEST_CASE("validation collects every problem, not just the first") {
  const std::string text = R"(
[grid]
n = 63
[kernel]
variant = singular
alpha = 2.5
[initial]
name = no_such_profile
[step]
t_end = -1
junk = 3
)";
  try {
    parse_scenario(text);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.issues().size() >= 4);
  }
}

TEST_CASE("randomized scenarios round-trip through serialization") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    Scenario s = random_scenario(rng);
    Scenario back = parse_scenario(serialize_scenario(s));
    CHECK(back == s);
  }
}

TEST_CASE("sweepable axes are recognized and applied") {
  CHECK(is_sweepable_axis("initial.mass"));
  CHECK(is_sweepable_axis("kernel.alpha"));
  CHECK(!is_sweepable_axis("output.directory"));

  Scenario s = parse_scenario(kMinimalScenario);
  apply_axis(s, "initial.mass", 3.5);
  CHECK(s.initial.mass == 3.5);
  CHECK_THROWS_AS(apply_axis(s, "output.directory", 1.0), std::invalid_argument);
  // Applying a value that breaks validation is rejected.
  Scenario singular = s;
  singular.kernel = KernelSpec::singular(1.5);
  CHECK_THROWS_AS(apply_axis(singular, "kernel.alpha", 2.5), ScenarioError);
}

TEST_CASE("diagnostics CSV rows use 17 significant digits and empty optionals") {
  DiagnosticsRecord r;
  r.t = 0.1;
  r.mass = 1.0 / 3.0;
  r.momentum = 0.0;
  std::string row = diagnostics_csv_row(r);
  CHECK(row.find("0.33333333333333331") != std::string::npos);
  // D, Q, flock_residual, free_energy are unset: consecutive commas.
  CHECK(row.find(",,") != std::string::npos);
  const auto commas = std::count(row.begin(), row.end(), ',');
  CHECK(commas == 14);  // 15 columns
}

TEST_CASE("run_scenario with t_end = 0 writes initial diagnostics, exit 0") {
  Scenario s = parse_scenario(kMinimalScenario);
  s.step.t_end = 0.0;
  s.output.directory = fresh_dir("tend0").string();
  RunArtifacts art = run_scenario(s);
  CHECK(art.exit_code == kExitClean);
  CHECK(fs::exists(art.directory / "diagnostics.csv"));
  CHECK(fs::exists(art.directory / "summary.json"));
  const std::string csv = slurp(art.directory / "diagnostics.csv");
  CHECK(csv.find(kDiagnosticsHeader) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one row
  CHECK(art.summary_json.find(kSummarySchemaVersion) != std::string::npos);
}

TEST_CASE("identical scenarios produce byte-identical diagnostics") {
  Scenario s = parse_scenario(kMinimalScenario);
  s.step.t_end = 1.0;
  s.output.directory = fresh_dir("det_a").string();
  RunArtifacts a = run_scenario(s);
  s.output.directory = fresh_dir("det_b").string();
  RunArtifacts b = run_scenario(s);
  CHECK(slurp(a.directory / "diagnostics.csv") ==
        slurp(b.directory / "diagnostics.csv"));
}

TEST_CASE("output directory honors the environment override") {
  Scenario s = parse_scenario(kMinimalScenario);
  s.step.t_end = 0.0;
  s.output.directory = "relative/ignored";
  fs::path forced = fresh_dir("envdir");
  setenv(kOutputDirEnvVar, forced.c_str(), 1);
  RunArtifacts art = run_scenario(s);
  unsetenv(kOutputDirEnvVar);
  CHECK(art.directory == forced);
  CHECK(fs::exists(forced / "summary.json"));
}

TEST_CASE("supercritical bounded scenario exits 2 with a blow-up record") {
  Scenario s = parse_scenario(kMinimalScenario);
  s.n = 256;
  s.kernel = KernelSpec::bounded(KernelShape::OffsetCosine, 0.1, 0.05);
  s.initial.u_amp = 2.0;
  s.step.t_end = 50.0;
  s.output.directory = fresh_dir("blowup").string();
  RunArtifacts art = run_scenario(s);
  CHECK(art.exit_code == kExitBlowup);
  REQUIRE(art.trajectory.blowup.has_value());
  CHECK(art.trajectory.blowup->t < 50.0);
  CHECK(art.summary_json.find("\"blowup\"") != std::string::npos);
}

TEST_CASE("single-value sweep matches a plain run") {
  Scenario s = parse_scenario(kMinimalScenario);
  s.step.t_end = 2.0;
  s.output.directory = fresh_dir("sweep1").string();
  SweepResult sw = run_sweep(s, "initial.u_amp", {0.1});
  REQUIRE(sw.rows.size() == 1);
  CHECK(sw.rows[0].exit_code == kExitClean);
  CHECK(fs::exists(sw.aggregate_csv));

  Scenario single = s;
  apply_axis(single, "initial.u_amp", 0.1);
  single.output.directory = fresh_dir("sweep1_ref").string();
  RunArtifacts ref = run_scenario(single);
  CHECK(ref.exit_code == kExitClean);
  // The sweep row reports the same run the standalone scenario produces.
  const double ref_mass0 = ref.trajectory.records.front().mass;
  const double ref_massN = ref.trajectory.records.back().mass;
  const double ref_residual = std::fabs(ref_massN - ref_mass0) / ref_mass0;
  CHECK(sw.rows[0].mass_residual == doctest::Approx(ref_residual));
}

TEST_CASE("grid refinement sweep keeps conservation residuals tiny") {
  Scenario s = parse_scenario(kMinimalScenario);
  s.step.t_end = 2.0;
  s.output.directory = fresh_dir("sweepn").string();
  SweepResult sw = run_sweep(s, "grid.n", {128, 256, 512});
  REQUIRE(sw.rows.size() == 3);
  CHECK(sw.rows[0].value == 128);
  CHECK(sw.rows[2].value == 512);
  for (const auto& row : sw.rows) {
    CHECK(row.exit_code == kExitClean);
    // Spectral conservation is at rounding level on every grid; refinement
    // must never degrade it beyond the solver tolerance.
    CHECK(row.mass_residual <= 1e-12);
    CHECK(row.momentum_residual <= 1e-12);
  }
}

TEST_CASE("sweep rejects a non-sweepable axis") {
  Scenario s = parse_scenario(kMinimalScenario);
  CHECK_THROWS_AS(run_sweep(s, "output.cadence", {0.1}), std::invalid_argument);
}
