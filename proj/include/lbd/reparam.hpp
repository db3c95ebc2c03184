#pragma once

// Quantile transport between a product support and working coordinates.
// A bounded coordinate x in (a, b) maps through u = (x - a)/(b - a) to
// y = q(u) on the line; the inverse is x = a + (b - a) F(y). Pushing the
// target density through this map turns V into
//   V#(y) = V(T^{-1}(y)) + U(y) - ln vol,
// where U stacks the per-coordinate penalties -ln f(y_i) and vol is the
// compact factor's volume. Hard walls disappear; U confines instead.
// Angle and line coordinates pass through untouched.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <utility>

#include "lbd/errors.hpp"
#include "lbd/families.hpp"
#include "lbd/support_space.hpp"
#include "lbd/targets.hpp"

namespace lbd {

class Reparameterization {
 public:
  Reparameterization(RandomVariableFamily family, SupportSpace space)
      : family_(family), space_(std::move(space)) {}

  const RandomVariableFamily& family() const { return family_; }
  const SupportSpace& space() const { return space_; }

  /// Support -> working coordinates. Points exactly on a bound are nudged
  /// inward by 1e-12 (b - a) first; strictly outside throws.
  Eigen::VectorXd push(Eigen::VectorXd x) const {
    check_dim(x.size());
    for (int i = 0; i < space_.dim(); ++i) {
      const Coord& c = space_.coord(i);
      if (c.kind != CoordKind::Bounded) continue;
      double delta = c.upper - c.lower;
      double xi = x[i];
      if (xi < c.lower || xi > c.upper)
        throw ContractViolation("push: coordinate outside its bounds");
      if (xi == c.lower) xi = c.lower + 1e-12 * delta;
      if (xi == c.upper) xi = c.upper - 1e-12 * delta;
      double u = (xi - c.lower) / delta;
      // Safety net against rounding at the edges; quantiles stay finite.
      u = std::min(std::max(u, std::numeric_limits<double>::min()), 1.0 - 0.5 * eps());
      x[i] = family_.quantile(u);
    }
    return x;
  }

  /// Working coordinates -> support. Output is strictly interior on bounded
  /// coordinates for every finite y.
  Eigen::VectorXd pull(Eigen::VectorXd y) const {
    check_dim(y.size());
    for (int i = 0; i < space_.dim(); ++i) {
      const Coord& c = space_.coord(i);
      if (c.kind != CoordKind::Bounded) continue;
      double xi = c.lower + (c.upper - c.lower) * family_.cdf(y[i]);
      if (!(xi > c.lower)) xi = std::nextafter(c.lower, c.upper);
      if (!(xi < c.upper)) xi = std::nextafter(c.upper, c.lower);
      y[i] = xi;
    }
    return y;
  }

  /// U(y): summed penalties of the bounded coordinates.
  double confinement(const Eigen::VectorXd& y) const {
    check_dim(y.size());
    double u = 0.0;
    for (int i = 0; i < space_.dim(); ++i)
      if (space_.kind(i) == CoordKind::Bounded) u += family_.penalty(y[i]);
    return u;
  }

  Eigen::VectorXd confinement_grad(const Eigen::VectorXd& y) const {
    check_dim(y.size());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(y.size());
    for (int i = 0; i < space_.dim(); ++i)
      if (space_.kind(i) == CoordKind::Bounded) g[i] = family_.penalty_grad(y[i]);
    return g;
  }

  /// V#(y; beta) = V(pull(y)) + U(y)/beta - ln vol. At beta = 1 this is the
  /// exact pushforward of the target; for beta < 1 only the confinement is
  /// softened, matching dynamics whose noise is scaled by 1/sqrt(beta).
  double pushforward_potential(const Potential& V, const Eigen::VectorXd& y,
                               double beta = 1.0) const {
    return V.value(pull(y)) + confinement(y) / beta - space_.log_volume();
  }

  /// Gradient of V#(y; beta): the chain-rule base term at full strength plus
  /// the confining gradient scaled by 1/beta. Exactly one target gradient
  /// evaluation per call.
  Eigen::VectorXd pushforward_gradient(const Potential& V, const Eigen::VectorXd& y,
                                       double beta = 1.0) const {
    check_dim(y.size());
    Eigen::VectorXd g = V.gradient(pull(y));
    for (int i = 0; i < space_.dim(); ++i) {
      const Coord& c = space_.coord(i);
      if (c.kind != CoordKind::Bounded) continue;
      g[i] = g[i] * (c.upper - c.lower) * family_.pdf(y[i]) + family_.penalty_grad(y[i]) / beta;
    }
    return g;
  }

  /// Minus log of the stationary density targeted at inverse temperature
  /// beta, up to a constant: beta V(pull(y)) + U(y). The birth-death rates
  /// compare the ensemble against exactly this density.
  double stationary_potential(const Potential& V, const Eigen::VectorXd& y, double beta) const {
    return beta * V.value(pull(y)) + confinement(y);
  }

 private:
  static constexpr double eps() { return std::numeric_limits<double>::epsilon(); }
  void check_dim(Eigen::Index n) const {
    if (n != space_.dim()) throw ContractViolation("Reparameterization: dimension mismatch");
  }

  RandomVariableFamily family_;
  SupportSpace space_;
};

}  // namespace lbd
