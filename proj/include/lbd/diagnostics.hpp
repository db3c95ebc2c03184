#pragma once

// Convergence diagnostics. The workhorse is the two-sample energy distance
//   E = 2 mean ||x_i - y_j|| - mean_{i != j} ||x_i - x_i'||
//                            - mean_{j != j'} ||y_j - y_j'||
// with off-diagonal within-sample means, reported together with the epsilon
// statistic n m / (n + m) * E. Distances are Euclidean in whatever
// coordinates the caller passes; the sampler always pulls ensembles back to
// the support first so traces are comparable across reparameterizations.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "lbd/errors.hpp"

namespace lbd {

/// Off-diagonal mean pairwise distance; cache this for a fixed reference set.
inline double mean_offdiag_distance(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  if (n < 2) throw ContractViolation("mean_offdiag_distance: need at least two samples");
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += (x.row(i) - x.row(j)).norm();
  return 2.0 * s / (static_cast<double>(n) * (n - 1));
}

inline double mean_cross_distance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() != y.cols()) throw ContractViolation("mean_cross_distance: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < y.rows(); ++j) s += (x.row(i) - y.row(j)).norm();
  return s / (static_cast<double>(x.rows()) * static_cast<double>(y.rows()));
}

struct EnergyDistance {
  double e = 0.0;     // the distance itself
  double stat = 0.0;  // n m / (n + m) * e
};

/// y_self, if nonnegative, reuses a precomputed mean_offdiag_distance(y).
inline EnergyDistance energy_distance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                      double y_self = -1.0) {
  if (x.rows() < 2 || y.rows() < 2)
    throw ContractViolation("energy_distance: both samples need at least two points");
  double cross = mean_cross_distance(x, y);
  double xs = mean_offdiag_distance(x);
  double ys = y_self >= 0.0 ? y_self : mean_offdiag_distance(y);
  EnergyDistance r;
  r.e = 2.0 * cross - xs - ys;
  double n = static_cast<double>(x.rows()), m = static_cast<double>(y.rows());
  r.stat = n * m / (n + m) * r.e;
  return r;
}

/// Fraction of samples lying beyond the circle halfway between the two ring
/// radii; the natural summary for the two-ring mixture.
inline double ring_weight(const Eigen::MatrixXd& samples, double inner_radius,
                          double outer_radius) {
  if (samples.rows() == 0) throw ContractViolation("ring_weight: empty sample");
  double split = 0.5 * (inner_radius + outer_radius);
  int beyond = 0;
  for (int i = 0; i < samples.rows(); ++i) beyond += (samples.row(i).norm() > split);
  return static_cast<double>(beyond) / static_cast<double>(samples.rows());
}

/// Per-iteration record of the run: epsilon statistic against the reference,
/// current inverse temperature, jumps accumulated since the previous record,
/// and the latest smoothing bandwidth (0 until the first birth-death round).
class ConvergenceTrace {
 public:
  void append(std::uint64_t iteration, double epsilon_stat, double beta, int jump_count,
              double bandwidth) {
    if (!std::isfinite(epsilon_stat) || !std::isfinite(beta) || !std::isfinite(bandwidth))
      throw ContractViolation("ConvergenceTrace: refusing to record non-finite values");
    iteration_.push_back(iteration);
    epsilon_.push_back(epsilon_stat);
    beta_.push_back(beta);
    jumps_.push_back(jump_count);
    bandwidth_.push_back(bandwidth);
  }

  std::size_t size() const { return iteration_.size(); }
  const std::vector<std::uint64_t>& iterations() const { return iteration_; }
  const std::vector<double>& epsilon_stats() const { return epsilon_; }
  const std::vector<double>& betas() const { return beta_; }
  const std::vector<int>& jump_counts() const { return jumps_; }
  const std::vector<double>& bandwidths() const { return bandwidth_; }

  void write_csv(std::ostream& os) const {
    os << "iteration,epsilon_stat,beta,jump_count,bandwidth\n";
    char buf[160];
    for (std::size_t k = 0; k < size(); ++k) {
      std::snprintf(buf, sizeof buf, "%llu,%.12g,%.12g,%d,%.12g\n",
                    static_cast<unsigned long long>(iteration_[k]), epsilon_[k], beta_[k],
                    jumps_[k], bandwidth_[k]);
      os << buf;
    }
  }

 private:
  std::vector<std::uint64_t> iteration_;
  std::vector<double> epsilon_, beta_, bandwidth_;
  std::vector<int> jumps_;
};

}  // namespace lbd
