#pragma once

// Fisher information estimated from ensemble gradients,
//   I = (1/N) sum_n g_n g_n^T + lambda Id,
// held as the Cholesky factorization I = U^T U with U upper triangular. One
// refresh serves many steps: the drift I^{-1} g costs two triangular solves
// against the cached factor, and noise with covariance I^{-1} is a single
// solve, since U z = xi gives cov(z) = U^{-1} U^{-T} = I^{-1}.

#include <Eigen/Dense>

#include <utility>

#include "lbd/errors.hpp"

namespace lbd {

/// Damped outer-product estimate from an N x d matrix of gradients.
inline Eigen::MatrixXd estimate_fisher(const Eigen::MatrixXd& grads, double lambda) {
  if (grads.rows() < 1) throw ContractViolation("estimate_fisher: need at least one gradient");
  if (lambda < 0.0) throw ContractViolation("estimate_fisher: damping must be >= 0");
  const auto d = grads.cols();
  Eigen::MatrixXd fisher = (grads.transpose() * grads) / static_cast<double>(grads.rows());
  fisher += lambda * Eigen::MatrixXd::Identity(d, d);
  return fisher;
}

class FisherPreconditioner {
 public:
  explicit FisherPreconditioner(Eigen::MatrixXd fisher) : matrix_(std::move(fisher)) {
    if (matrix_.rows() != matrix_.cols())
      throw ContractViolation("FisherPreconditioner: matrix must be square");
    llt_.compute(matrix_);
    if (llt_.info() != Eigen::Success)
      throw ContractViolation(
          "FisherPreconditioner: matrix is not positive definite (is the damping too small?)");
  }

  static FisherPreconditioner estimate(const Eigen::MatrixXd& grads, double lambda) {
    return FisherPreconditioner(estimate_fisher(grads, lambda));
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  Eigen::MatrixXd upper() const { return llt_.matrixU(); }

  /// I^{-1} g through the cached factor.
  Eigen::VectorXd solve(const Eigen::VectorXd& g) const { return llt_.solve(g); }

  /// Maps xi ~ N(0, Id) to U^{-1} xi ~ N(0, I^{-1}).
  Eigen::VectorXd correlate(const Eigen::VectorXd& xi) const { return llt_.matrixU().solve(xi); }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace lbd
