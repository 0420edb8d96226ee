#include <cmath>

#include "flocksim/scenario.hpp"

namespace flock {

namespace {

/// Unnormalized bump profile centered at c with width w (torus distance).
double bump_profile(const PeriodicGrid& g, double x, double c, double w) {
  const double d = g.torus_distance(x, c);
  return std::exp(-0.5 * d * d / (w * w));
}

Field normalize_mass(Field rho, double mass) {
  const double total = integral(rho);
  for (int j = 0; j < rho.grid().n; ++j) rho[j] *= mass / total;
  return rho;
}

}  // namespace

FieldState make_initial_state(const Scenario& s) {
  const PeriodicGrid g = s.grid();
  const InitialSpec& init = s.initial;
  FieldState state{Field(g), Field(g), 0.0};

  if (init.name == "perturbed_constant") {
    const double base = init.mass / g.length;
    state.rho = Field::sample(g, [&](double x) {
      return base * (1.0 + init.rho_amp * std::cos(x + init.rho_phase));
    });
    state.u = Field::sample(
        g, [&](double x) { return init.u_amp * std::sin(x + init.u_phase); });
  } else if (init.name == "bump") {
    const double c = 0.5 * g.length;
    state.rho = normalize_mass(
        Field::sample(g,
                      [&](double x) {
                        return bump_profile(g, x, c, init.bump_width);
                      }),
        init.mass);
    state.u = Field::sample(
        g, [&](double x) { return init.u_amp * std::sin(x + init.u_phase); });
  } else if (init.name == "two_bump") {
    const double c = 0.5 * g.length;
    const double half = 0.5 * init.bump_separation;
    state.rho = normalize_mass(
        Field::sample(g,
                      [&](double x) {
                        return bump_profile(g, x, c - half, init.bump_width) +
                               bump_profile(g, x, c + half, init.bump_width);
                      }),
        init.mass);
    // Opposing inward drift so the bumps merge.
    state.u = Field::sample(g, [&](double x) {
      return -init.u_amp * std::sin(kTwoPi * (x - c) / g.length);
    });
  } else {
    throw std::invalid_argument("unknown initial data '" + init.name + "'");
  }
  return state;
}

}  // namespace flock
