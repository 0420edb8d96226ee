#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace flock {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform sample grid on the L-torus, x_j = L j / n.
struct PeriodicGrid {
  int n = 0;
  double length = kTwoPi;

  PeriodicGrid() = default;
  PeriodicGrid(int n_, double length_ = kTwoPi) : n(n_), length(length_) {
    if (n < 16 || n % 2 != 0)
      throw std::invalid_argument("PeriodicGrid: n must be even and >= 16");
    if (!(length > 0.0))
      throw std::invalid_argument("PeriodicGrid: length must be positive");
  }

  double dx() const { return length / n; }
  double node(int j) const { return length * j / n; }

  /// Physical wavenumber for integer mode index k.
  double wavenumber(int k) const { return kTwoPi * k / length; }

  /// Wraps x into [0, length).
  double wrap(double x) const {
    double y = std::fmod(x, length);
    return y < 0.0 ? y + length : y;
  }

  /// Nearest-image distance on the torus, in [0, length/2].
  double torus_distance(double a, double b) const {
    double d = std::fabs(wrap(a - b));
    return d > 0.5 * length ? length - d : d;
  }

  bool operator==(const PeriodicGrid&) const = default;
};

/// Real-valued grid function attached to a PeriodicGrid.
class Field {
 public:
  Field() = default;
  explicit Field(const PeriodicGrid& g) : grid_(g), v_(g.n, 0.0) {}
  Field(const PeriodicGrid& g, std::vector<double> values)
      : grid_(g), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != g.n)
      throw std::invalid_argument("Field: value count does not match grid");
  }

  static Field sample(const PeriodicGrid& g,
                      const std::function<double(double)>& f) {
    Field out(g);
    for (int j = 0; j < g.n; ++j) out[j] = f(g.node(j));
    return out;
  }

  const PeriodicGrid& grid() const { return grid_; }
  int size() const { return grid_.n; }
  double& operator[](int j) { return v_[j]; }
  double operator[](int j) const { return v_[j]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

 private:
  PeriodicGrid grid_;
  std::vector<double> v_;
};

inline void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument("fields live on different grids");
}

inline bool all_finite(const Field& f) {
  for (double x : f.values())
    if (!std::isfinite(x)) return false;
  return true;
}

inline double min_value(const Field& f) {
  double m = f[0];
  for (double x : f.values()) m = std::min(m, x);
  return m;
}

inline double max_value(const Field& f) {
  double m = f[0];
  for (double x : f.values()) m = std::max(m, x);
  return m;
}

inline double sup_norm(const Field& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::fabs(x));
  return m;
}

/// (1/L) \int f dx by the (spectrally exact) trapezoid rule.
inline double mean(const Field& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s / f.size();
}

/// \int f dx.
inline double integral(const Field& f) { return mean(f) * f.grid().length; }

/// L2 norm with measure dx.
inline double l2_norm(const Field& f) {
  double s = 0.0;
  for (double x : f.values()) s += x * x;
  return std::sqrt(s * f.grid().dx());
}

/// Discrete inner product \sum f g dx.
inline double inner(const Field& f, const Field& g) {
  require_same_grid(f, g);
  double s = 0.0;
  for (int j = 0; j < f.size(); ++j) s += f[j] * g[j];
  return s * f.grid().dx();
}

}  // namespace flock
