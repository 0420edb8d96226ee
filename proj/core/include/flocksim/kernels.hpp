#pragma once

#include <optional>
#include <string>

#include "flocksim/grid.hpp"

namespace flock {

enum class KernelVariant { BoundedSymmetric, MostschTadmor, SingularFractional };

/// Closed-form shapes for bounded kernels, parameterized by (p0, p1).
enum class KernelShape {
  Constant,       // phi(r) = p0
  OffsetCosine,   // phi(r) = p0 + p1 cos(r)
  GaussianTorus,  // phi(r) = exp(-r^2 / (2 p0^2))
  AlgebraicDecay  // phi(r) = (1 + r^2)^{-p0}
};

struct KernelBounds {
  double inf = 0.0;   // iota_phi
  double sup = 0.0;   // I_phi; meaningless when !sup_finite
  bool sup_finite = true;
};

/// Influence-kernel description. Immutable after construction.
struct KernelSpec {
  KernelVariant variant = KernelVariant::BoundedSymmetric;
  KernelShape shape = KernelShape::Constant;
  double p0 = 1.0;
  double p1 = 0.0;
  double alpha = 1.0;  // SingularFractional only

  static KernelSpec bounded(KernelShape s, double a, double b = 0.0);
  static KernelSpec mostsch_tadmor(KernelShape s, double a, double b = 0.0);
  static KernelSpec singular(double alpha);

  bool is_singular() const { return variant == KernelVariant::SingularFractional; }

  /// Bounded-kernel value at torus distance r >= 0.
  double eval(double r) const;

  bool operator==(const KernelSpec&) const = default;
};

struct DegenerateNormalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// phi_alpha(x) = sum_{|k| <= truncation} |x + P k|^{-(1+alpha)} plus an
/// Euler-Maclaurin tail correction; P is the period (2 pi by default).
double periodized_kernel_eval(double alpha, double x, int truncation,
                              double period = kTwoPi);

/// Infimum and supremum of the kernel over the torus of the given period.
KernelBounds kernel_bounds(const KernelSpec& k, double period = kTwoPi);

/// Bounded kernel sampled at torus distances of the grid nodes.
Field tabulate(const KernelSpec& k, const PeriodicGrid& g);

/// Per-grid cache of everything the force and RHS evaluations need.
struct KernelContext {
  KernelSpec spec;
  PeriodicGrid grid;
  Field phi_tab;          // bounded variants
  double phi_integral = 0.0;

  KernelContext(const KernelSpec& k, const PeriodicGrid& g);
};

/// F(x) = int phi(|x-y|) (u(y) - u(x)) rho(y) dy.
/// Bounded kernels: phi*(rho u) - (phi*rho) u. Singular kernels: the
/// commutator L_a(rho u) - u L_a(rho).
Field commutator_force(const KernelContext& k, const Field& rho, const Field& u);
Field commutator_force(const KernelSpec& k, const Field& rho, const Field& u);

/// Mostch-Tadmor normalized force [phi*(rho u) - (phi*rho) u] / (phi*rho).
Field mt_normalized_force(const KernelContext& k, const Field& rho,
                          const Field& u);
Field mt_normalized_force(const KernelSpec& k, const Field& rho, const Field& u);

/// Registry lookup used by scenario files. Throws on unknown name.
KernelShape kernel_shape_from_name(const std::string& name);
std::string kernel_shape_name(KernelShape s);

}  // namespace flock
