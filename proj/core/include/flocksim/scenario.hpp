#pragma once

#include <string>
#include <vector>

#include "flocksim/dynamics.hpp"
#include "flocksim/kernels.hpp"

namespace flock {

enum class DomainMode { Torus, LineEmulation };

struct InitialSpec {
  std::string name = "perturbed_constant";  // perturbed_constant | bump | two_bump
  double mass = kTwoPi;
  double rho_amp = 0.5;
  double rho_phase = 0.0;
  double u_amp = 0.1;
  double u_phase = 0.0;
  double bump_width = 1.0;
  double bump_separation = 0.0;

  bool operator==(const InitialSpec&) const = default;
};

struct OutputSpec {
  double cadence = 0.1;
  std::string directory = "out";
  bool snapshots = false;
  EConvention e_convention = EConvention::Threshold;
  bool e_convention_explicit = false;

  bool operator==(const OutputSpec&) const = default;
};

struct AgentsSpec {
  bool enabled = false;
  int count = 400;
  unsigned seed = 1;
  double mollifier_width = 0.3;
  double dt = 0.01;

  bool operator==(const AgentsSpec&) const = default;
};

struct Scenario {
  int n = 256;
  double length = kTwoPi;
  KernelSpec kernel = KernelSpec::bounded(KernelShape::OffsetCosine, 2.0, 1.0);
  InitialSpec initial;
  StepControl step;
  OutputSpec output;
  DomainMode mode = DomainMode::Torus;
  double support_threshold = 1e-4;
  AgentsSpec agents;

  PeriodicGrid grid() const { return PeriodicGrid{n, length}; }
  EConvention e_convention() const;

  bool operator==(const Scenario&) const = default;
};

struct ScenarioIssue {
  int line = 0;  // 0 when not tied to a specific line
  std::string message;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<ScenarioIssue> issues);
  const std::vector<ScenarioIssue>& issues() const { return issues_; }

 private:
  std::vector<ScenarioIssue> issues_;
};

// Parses the sectioned key = value format; throws ScenarioError carrying
// every validation problem found, each with its line number.
Scenario parse_scenario(const std::string& text);

// Lossless textual form: parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

// Builds the initial FieldState from the registry entry.
FieldState make_initial_state(const Scenario& s);

// Sweepable axes: "initial.mass", "initial.u_amp", "initial.rho_amp",
// "kernel.p0", "kernel.p1", "kernel.alpha", "grid.n", "step.t_end".
void apply_axis(Scenario& s, const std::string& axis, double value);
bool is_sweepable_axis(const std::string& axis);

}  // namespace flock
