// flocksim: scenario-driven runs of the 1D Euler-alignment system, parameter
// sweeps, scenario validation, and direct-quadrature operator oracles.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flocksim/oracles.hpp"
#include "flocksim/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

flock::Scenario load(const std::string& path) {
  return flock::parse_scenario(slurp(path));
}

void print_scenario_error(const flock::ScenarioError& e) {
  std::cerr << "invalid scenario:\n";
  for (const auto& issue : e.issues()) {
    std::cerr << "  ";
    if (issue.line > 0) std::cerr << "line " << issue.line << ": ";
    std::cerr << issue.message << "\n";
  }
}

int cmd_simulate(const std::string& path) {
  const flock::Scenario s = load(path);
  const flock::RunArtifacts art = flock::run_scenario(s);
  std::cout << "output: " << art.directory.string() << "\n";
  if (art.trajectory.blowup)
    std::cout << "blow-up at t = " << art.trajectory.blowup->t << " ("
              << art.trajectory.blowup->what << ")\n";
  return art.exit_code;
}

int cmd_sweep(const std::string& path, const std::string& axis,
              const std::string& values_csv) {
  std::vector<double> values;
  std::istringstream in(values_csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    values.push_back(std::stod(tok));
  }
  const flock::SweepResult res = flock::run_sweep(load(path), axis, values);
  std::cout << "aggregate: " << res.aggregate_csv.string() << "\n";
  return res.exit_code;
}

int cmd_validate(const std::string& path) {
  const flock::Scenario s = load(path);
  std::cout << flock::serialize_scenario(s);
  return flock::kExitClean;
}

int cmd_oracle(const std::string& op, double alpha, double x, int mode,
               double period) {
  using namespace flock::oracle;
  double value = 0.0;
  if (op == "c_alpha") {
    value = symbol_constant_closed_form(alpha);
  } else if (op == "phi") {
    value = periodized_kernel_direct(alpha, x, period);
  } else if (op == "frac_laplacian") {
    TrigPoly f;
    f.a.assign(mode, 0.0);
    f.b.assign(mode, 0.0);
    f.a[mode - 1] = 1.0;  // f(x) = cos(mode * x)
    value = fractional_laplacian_direct(f, alpha, x);
  } else if (op == "dissipation") {
    TrigPoly f;
    f.a.assign(mode, 0.0);
    f.b.assign(mode, 0.0);
    f.a[mode - 1] = 1.0;
    value = dissipation_direct(f, alpha, x);
  } else {
    throw std::runtime_error("unknown oracle operator: " + op);
  }
  std::printf("%.17g\n", value);
  return flock::kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "1D Euler-alignment simulator: pseudo-spectral solver, particle "
      "cross-checks, and flocking diagnostics"};
  app.require_subcommand(1);

  std::string scenario_path, axis, values_csv;
  std::string oracle_op;
  double alpha = 1.0, x = M_PI, period = flock::kTwoPi;
  int mode = 1;

  auto* sim = app.add_subcommand("simulate", "Run one scenario to t_end");
  sim->add_option("scenario", scenario_path, "scenario file")->required();

  auto* sweep = app.add_subcommand("sweep", "Run a one-parameter sweep");
  sweep->add_option("scenario", scenario_path, "template scenario file")
      ->required();
  sweep->add_option("--axis", axis, "swept parameter, e.g. initial.mass")
      ->required();
  sweep->add_option("--values", values_csv, "comma-separated values")
      ->required();

  auto* val = app.add_subcommand(
      "validate", "Validate a scenario file and print its canonical form");
  val->add_option("scenario", scenario_path, "scenario file")->required();

  auto* orc = app.add_subcommand(
      "oracle", "Evaluate a direct-quadrature reference operator");
  orc->add_option("operator", oracle_op,
                  "c_alpha | phi | frac_laplacian | dissipation")
      ->required();
  orc->add_option("--alpha", alpha, "fractional order in (0, 2)");
  orc->add_option("--x", x, "evaluation point");
  orc->add_option("--mode", mode, "trigonometric mode k (input cos kx)")
      ->check(CLI::PositiveNumber);
  orc->add_option("--period", period, "torus period");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(scenario_path);
    if (sweep->parsed()) return cmd_sweep(scenario_path, axis, values_csv);
    if (val->parsed()) return cmd_validate(scenario_path);
    if (orc->parsed()) return cmd_oracle(oracle_op, alpha, x, mode, period);
  } catch (const flock::ScenarioError& e) {
    print_scenario_error(e);
    return flock::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return flock::kExitError;
  }
  return flock::kExitError;
}
