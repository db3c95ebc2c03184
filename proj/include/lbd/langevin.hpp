#pragma once

// Ensemble container and the overdamped update kernels. All steps are
// unadjusted (no accept-reject): discretization bias is accepted in exchange
// for never rejecting a move.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>

#include "lbd/errors.hpp"
#include "lbd/fisher.hpp"
#include "lbd/rng.hpp"
#include "lbd/support_space.hpp"

namespace lbd {

struct Ensemble {
  // One particle per row. Rows live in working coordinates whenever a
  // reparameterization is active; the space describes those coordinates.
  Eigen::MatrixXd positions;
  SupportSpace space;

  Ensemble(Eigen::MatrixXd pos, SupportSpace sp) : positions(std::move(pos)), space(std::move(sp)) {
    if (positions.cols() != space.dim())
      throw ContractViolation("Ensemble: position columns must match space dimension");
  }

  int size() const { return static_cast<int>(positions.rows()); }
  int dim() const { return static_cast<int>(positions.cols()); }
};

/// Supplies the standard normal vector for one particle of the current
/// iteration. The production source is keyed_noise below; tests inject
/// zero or fixed vectors through the same seam.
using NoiseSource = std::function<Eigen::VectorXd(int particle)>;

/// Draws keyed by (seed, iteration, particle): the same triple always yields
/// the same vector, no matter how particles are scheduled across workers.
inline NoiseSource keyed_noise(std::uint64_t seed, std::uint64_t iteration, int dim) {
  return [seed, iteration, dim](int particle) {
    SplitMix64 g = keyed_stream(seed, 0x7A31u, iteration, static_cast<std::uint64_t>(particle));
    Eigen::VectorXd z(dim);
    for (int i = 0; i < dim; ++i) z[i] = standard_normal(g);
    return z;
  };
}

inline NoiseSource zero_noise(int dim) {
  return [dim](int) { return Eigen::VectorXd::Zero(dim); };
}

/// Linear inverse-temperature ramp: beta(l) = beta_min + (1 - beta_min) l/L,
/// clamped to 1 for l >= L. Non-decreasing in l.
inline double beta_at(double beta_min, std::uint64_t l, std::uint64_t total) {
  if (!(beta_min > 0.0 && beta_min <= 1.0))
    throw ContractViolation("beta_at: beta_min must lie in (0, 1]");
  if (total == 0 || l >= total) return 1.0;
  return beta_min + (1.0 - beta_min) * (static_cast<double>(l) / static_cast<double>(total));
}

/// One update of every particle:
///   y <- y - drift * tau + sqrt(2 tau / beta) z,
/// where drift = I^{-1} g and z = U^{-1} xi when a preconditioner is given,
/// else drift = g and z = xi. Angle coordinates are re-wrapped afterwards.
/// With pre == nullptr, or with an exact identity Fisher matrix, the two
/// branches produce bitwise identical results for the same noise.
inline void langevin_step(Ensemble& e, const Eigen::MatrixXd& grads, double tau, double beta,
                          const FisherPreconditioner* pre, const NoiseSource& noise) {
  if (grads.rows() != e.positions.rows() || grads.cols() != e.positions.cols())
    throw ContractViolation("langevin_step: gradient shape mismatch");
  if (!(tau > 0.0)) throw ContractViolation("langevin_step: tau must be positive");
  if (!(beta > 0.0)) throw ContractViolation("langevin_step: beta must be positive");
  const double scale = std::sqrt(2.0 * tau / beta);
  const int n = e.size();
  for (int p = 0; p < n; ++p) {
    Eigen::VectorXd xi = noise(p);
    Eigen::VectorXd g = grads.row(p);
    Eigen::VectorXd drift = pre ? Eigen::VectorXd(pre->solve(g)) : g;
    Eigen::VectorXd z = pre ? Eigen::VectorXd(pre->correlate(xi)) : xi;
    e.positions.row(p) -= tau * drift.transpose();
    e.positions.row(p) += scale * z.transpose();
    e.space.wrap_in_place(e.positions.row(p));
  }
}

/// Identity-metric step at unit temperature.
inline void ula_step(Ensemble& e, const Eigen::MatrixXd& grads, double tau,
                     const NoiseSource& noise) {
  langevin_step(e, grads, tau, 1.0, nullptr, noise);
}

/// Fisher-preconditioned step at unit temperature.
inline void preconditioned_step(Ensemble& e, const Eigen::MatrixXd& grads,
                                const FisherPreconditioner& pre, double tau,
                                const NoiseSource& noise) {
  langevin_step(e, grads, tau, 1.0, &pre, noise);
}

/// Tempered step: callers pass gradients of the softened potential for the
/// same beta; the noise picks up the 1/sqrt(beta) heating. beta = 1
/// reproduces the unannealed step exactly.
inline void annealed_step(Ensemble& e, const Eigen::MatrixXd& grads, double tau, double beta,
                          const FisherPreconditioner* pre, const NoiseSource& noise) {
  langevin_step(e, grads, tau, beta, pre, noise);
}

}  // namespace lbd
