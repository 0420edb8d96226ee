#pragma once

#include <utility>
#include <vector>

#include "flocksim/kernels.hpp"

namespace flock {

/// Cucker-Smale particle state on the torus.
struct AgentState {
  std::vector<double> x;  // positions, wrapped into [0, L)
  std::vector<double> v;
  double t = 0.0;
  double length = kTwoPi;

  int count() const { return static_cast<int>(x.size()); }
};

enum class CsNormalization { Mean, Adaptive };

struct UnsupportedKernelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnderResolvedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AgentRhs {
  std::vector<double> dx;
  std::vector<double> dv;
};

/// dx_i/dt = v_i; dv_i/dt = (1/N) sum_j phi(d(x_i,x_j)) (v_j - v_i)
/// (Mean) or with prefactor 1/sum_j phi(d(x_i,x_j)) (Adaptive). d is the
/// nearest-image torus distance. Bounded kernels only.
AgentRhs cs_rhs(const AgentState& s, const KernelSpec& k, CsNormalization norm);

/// Classical RK4 step; positions re-wrapped afterwards.
AgentState agents_step(const AgentState& s, const KernelSpec& k, double dt,
                       CsNormalization norm);

/// Deterministic inverse-CDF sampling of rho0 with a seeded van der Corput
/// offset sequence; velocities set to u0(x_i).
AgentState sample_agents(const Field& rho0, const Field& u0, int count,
                         unsigned seed);

/// Mollified empirical density and momentum on the grid: a periodic
/// Gaussian bump of the given width around each agent, normalized so that
/// (1/L) int rho_emp = 1. Requires width >= 2 dx.
std::pair<Field, Field> empirical_moments(const AgentState& s,
                                          const PeriodicGrid& grid,
                                          double mollifier_width);

}  // namespace flock
