#pragma once

// Product support: per coordinate either a bounded open interval (a, b), an
// angle on the circle (fixed period 2*pi, canonical range [0, 2*pi)), or the
// whole real line. The sampler only ever needs these three cases.

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "lbd/errors.hpp"
#include "lbd/math.hpp"

namespace lbd {

enum class CoordKind { Bounded, Periodic, Unbounded };

struct Coord {
  CoordKind kind = CoordKind::Unbounded;
  double lower = 0.0;  // meaningful for Bounded only
  double upper = 0.0;

  static Coord bounded(double lo, double hi) { return {CoordKind::Bounded, lo, hi}; }
  static Coord periodic() { return {CoordKind::Periodic, 0.0, two_pi}; }
  static Coord unbounded() { return {CoordKind::Unbounded, 0.0, 0.0}; }
};

/// Canonical angle representative in [0, 2*pi). Exact identity on inputs that
/// are already canonical, hence idempotent.
inline double wrap_angle(double x) {
  double r = x - two_pi * std::floor(x / two_pi);
  if (r < 0.0) r += two_pi;      // quotient rounding can leave a negative hair
  if (r >= two_pi) r -= two_pi;  // sums at the seam can round up to 2 pi
  return r;
}

/// Minimum-magnitude angle difference a - b, representative in (-pi, pi].
inline double wrapped_diff(double a, double b) {
  double d = std::remainder(a - b, two_pi);  // lands in [-pi, pi]
  return d <= -pi ? d + two_pi : d;
}

class SupportSpace {
 public:
  explicit SupportSpace(std::vector<Coord> coords) : coords_(std::move(coords)) {
    for (const Coord& c : coords_) {
      if (c.kind != CoordKind::Bounded) continue;
      if (!std::isfinite(c.lower) || !std::isfinite(c.upper) || !(c.lower < c.upper))
        throw ContractViolation("SupportSpace: bounded coordinate needs finite lower < upper");
    }
  }

  static SupportSpace box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    if (lo.size() != hi.size()) throw ContractViolation("SupportSpace::box: size mismatch");
    std::vector<Coord> cs;
    cs.reserve(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) cs.push_back(Coord::bounded(lo[i], hi[i]));
    return SupportSpace(std::move(cs));
  }

  static SupportSpace unbounded(int dim) {
    return SupportSpace(std::vector<Coord>(dim, Coord::unbounded()));
  }

  static SupportSpace torus(int n) {
    return SupportSpace(std::vector<Coord>(n, Coord::periodic()));
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const Coord& coord(int i) const { return coords_[i]; }
  CoordKind kind(int i) const { return coords_[i].kind; }

  int count(CoordKind k) const {
    int n = 0;
    for (const Coord& c : coords_) n += (c.kind == k);
    return n;
  }
  bool any_periodic() const { return count(CoordKind::Periodic) > 0; }
  bool any_bounded() const { return count(CoordKind::Bounded) > 0; }

  /// Log volume of the compact factor: sum of ln(b - a) over bounded
  /// coordinates plus ln(2*pi) per angle. Unbounded coordinates contribute
  /// nothing (their transform below is the identity with unit Jacobian).
  double log_volume() const {
    double s = 0.0;
    for (const Coord& c : coords_) {
      if (c.kind == CoordKind::Bounded) s += std::log(c.upper - c.lower);
      if (c.kind == CoordKind::Periodic) s += std::log(two_pi);
    }
    return s;
  }

  /// Strict interior on bounded coordinates; angles and lines accept any
  /// finite value.
  bool contains(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
      if (!std::isfinite(x[i])) return false;
      const Coord& c = coords_[i];
      if (c.kind == CoordKind::Bounded && !(x[i] > c.lower && x[i] < c.upper)) return false;
    }
    return true;
  }

  /// Canonicalizes angle coordinates; other coordinates pass through.
  Eigen::VectorXd wrap(Eigen::VectorXd x) const {
    for (int i = 0; i < dim(); ++i)
      if (coords_[i].kind == CoordKind::Periodic) x[i] = wrap_angle(x[i]);
    return x;
  }

  void wrap_in_place(Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> x) const {
    for (int i = 0; i < dim(); ++i)
      if (coords_[i].kind == CoordKind::Periodic) x[i] = wrap_angle(x[i]);
  }

  /// x - y with angle coordinates reduced to their minimum-magnitude
  /// representative; |d_i| <= pi on angles.
  Eigen::VectorXd displacement(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd d = x - y;
    for (int i = 0; i < dim(); ++i)
      if (coords_[i].kind == CoordKind::Periodic) d[i] = wrapped_diff(x[i], y[i]);
    return d;
  }

 private:
  std::vector<Coord> coords_;
};

}  // namespace lbd
