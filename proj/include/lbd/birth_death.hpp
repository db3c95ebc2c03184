#pragma once

// Birth-death jump process, decoupled from the diffusion: every round
// compares the kernel-smoothed ensemble density against the target and
// teleports a small fraction of particles from over- to under-represented
// regions. Rates are computed entirely in log space; the adaptive scale keeps
// the expected number of jumps per round below a prescribed fraction of N.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lbd/errors.hpp"
#include "lbd/math.hpp"
#include "lbd/particle_tracker.hpp"
#include "lbd/rng.hpp"
#include "lbd/support_space.hpp"

namespace lbd {

/// Rate numerator variants. KRhoOverP smooths the ratio rho/p in one pass,
///   Lambda_i = ln (1/N) sum_j k(x_i, x_j) e^{V(x_j)} - mean;
/// KRhoTimesInvP smooths rho alone and divides by p at the point,
///   Lambda_i = ln (1/N) sum_j k(x_i, x_j) + V(x_i) - mean.
enum class RateForm { KRhoOverP, KRhoTimesInvP };

struct BdConfig {
  double max_jump_fraction = 0.05;      // f: expected jumps per round <= N f
  std::optional<double> gamma;          // rate-time per round; defaults to 0.01 tau
  double c_max = 1.0;                   // ceiling for the adaptive rate scale
  int wrap_truncation = 3;              // shift images per side on angles
  RateForm rate_form = RateForm::KRhoOverP;
  std::optional<double> fixed_bandwidth;  // overrides the median heuristic
};

/// Anisotropic Gaussian bump, metric M and bandwidth h:
///   ln k(x, y) = -d^T M d / (2h),  d = displacement(x, y).
/// Angle coordinates get a truncated sum over +-K period images around the
/// minimum-magnitude displacement, which makes k periodic to well below 1e-8
/// for K >= 3 at any practical bandwidth.
class SmoothingKernel {
 public:
  SmoothingKernel(Eigen::MatrixXd metric, double bandwidth, SupportSpace space,
                  int truncation = 3)
      : metric_(std::move(metric)), h_(bandwidth), truncation_(truncation),
        space_(std::move(space)) {
    if (!(h_ > 0.0)) throw ContractViolation("SmoothingKernel: bandwidth must be positive");
    if (metric_.rows() != space_.dim() || metric_.cols() != space_.dim())
      throw ContractViolation("SmoothingKernel: metric shape mismatch");
    for (int i = 0; i < space_.dim(); ++i)
      if (space_.kind(i) == CoordKind::Periodic) periodic_.push_back(i);
  }

  double bandwidth() const { return h_; }

  double log_value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd d = space_.displacement(x, y);
    if (periodic_.empty()) return -quad(d) / (2.0 * h_);
    // Enumerate shift tuples over the angle coordinates.
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(std::pow(2 * truncation_ + 1, periodic_.size())));
    Eigen::VectorXd shifted = d;
    accumulate_shifts(0, d, shifted, terms);
    return log_sum_exp(terms);
  }

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return std::exp(log_value(x, y));
  }

 private:
  double quad(const Eigen::VectorXd& d) const { return d.dot(metric_ * d); }

  void accumulate_shifts(std::size_t level, const Eigen::VectorXd& d, Eigen::VectorXd& shifted,
                         std::vector<double>& terms) const {
    if (level == periodic_.size()) {
      terms.push_back(-quad(shifted) / (2.0 * h_));
      return;
    }
    int i = periodic_[level];
    for (int s = -truncation_; s <= truncation_; ++s) {
      shifted[i] = d[i] + two_pi * s;
      accumulate_shifts(level + 1, d, shifted, terms);
    }
    shifted[i] = d[i];
  }

  Eigen::MatrixXd metric_;
  double h_;
  int truncation_;
  std::vector<int> periodic_;
  SupportSpace space_;
};

/// Median heuristic: h = median over unordered pairs of the squared metric
/// distance (angle coordinates wrapped). Even pair counts average the two
/// central order statistics. Throws once every pair coincides.
inline double median_bandwidth(const Eigen::MatrixXd& positions, const Eigen::MatrixXd& metric,
                               const SupportSpace& space) {
  const int n = static_cast<int>(positions.rows());
  if (n < 2) throw ContractViolation("median_bandwidth: need at least two particles");
  std::vector<double> q;
  q.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXd d = space.displacement(positions.row(i), positions.row(j));
      q.push_back(d.dot(metric * d));
    }
  auto mid = q.begin() + q.size() / 2;
  std::nth_element(q.begin(), mid, q.end());
  double h = *mid;
  if (q.size() % 2 == 0) {
    double lo = *std::max_element(q.begin(), mid);
    h = 0.5 * (lo + h);
  }
  if (!(h > 0.0))
    throw DegenerateBandwidthError("median_bandwidth: all pairwise distances are zero");
  return h;
}

/// Mean-centered log ratio of smoothed ensemble density to target density.
/// Shifting V by a constant provably cancels; the result has mean zero by
/// construction.
inline Eigen::VectorXd compute_rates(const Eigen::MatrixXd& positions,
                                     const Eigen::VectorXd& potentials,
                                     const SmoothingKernel& kernel,
                                     RateForm form = RateForm::KRhoOverP) {
  const int n = static_cast<int>(positions.rows());
  if (potentials.size() != n) throw ContractViolation("compute_rates: size mismatch");
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(potentials[i]))
      throw ContractViolation("compute_rates: non-finite potential for particle " +
                              std::to_string(i));
  Eigen::VectorXd a(n);
  std::vector<double> terms(n);
  const double log_n = std::log(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      terms[j] = kernel.log_value(positions.row(i), positions.row(j));
      if (form == RateForm::KRhoOverP) terms[j] += potentials[j];
    }
    a[i] = log_sum_exp(terms) - log_n;
    if (form == RateForm::KRhoTimesInvP) a[i] += potentials[i];
  }
  a.array() -= a.mean();
  return a;
}

/// c = min(c_max, 2f / <|Lambda|>), so that <|Lambda|> c <= 2f. Combined with
/// a rate-time gamma <= 1 this bounds the expected accepted jumps per round
/// by N f. A zero-rate ensemble just gets the ceiling.
inline double adapt_rate_scale(const Eigen::VectorXd& rates, double max_jump_fraction,
                               double c_max = 1.0) {
  if (!(max_jump_fraction > 0.0 && max_jump_fraction < 1.0))
    throw ContractViolation("adapt_rate_scale: max_jump_fraction must lie in (0,1)");
  if (!(c_max > 0.0)) throw ContractViolation("adapt_rate_scale: c_max must be positive");
  double mean_abs = rates.array().abs().mean();
  if (mean_abs == 0.0) return c_max;
  return std::min(c_max, 2.0 * max_jump_fraction / mean_abs);
}

struct BdJumpResult {
  std::vector<int> jump_to;  // output row i copies input row jump_to[i]
  int replaced = 0;          // entries with jump_to[i] != i
};

/// One jump sweep. Particle i is accepted with probability
/// 1 - exp(-|c Lambda_i| gamma); accepted particles are visited in a uniformly
/// random order. A positive-rate particle dies and copies a uniformly random
/// alive particle other than itself; a negative-rate particle clones itself
/// over a uniformly random other alive victim. Dead particles are skipped and
/// never serve as copy sources; a particle with no alive counterpart left is
/// skipped too. Positions are replaced in place.
inline BdJumpResult bd_jump(Eigen::MatrixXd& positions, const Eigen::VectorXd& rates, double c,
                            double gamma, SplitMix64& rng) {
  const int n = static_cast<int>(positions.rows());
  if (rates.size() != n) throw ContractViolation("bd_jump: size mismatch");
  if (!(c >= 0.0) || !(gamma >= 0.0))
    throw ContractViolation("bd_jump: scale and rate-time must be nonnegative");

  std::vector<int> accepted;
  for (int i = 0; i < n; ++i) {
    double p = -std::expm1(-std::abs(c * rates[i]) * gamma);
    if (uniform_open(rng) < p) accepted.push_back(i);
  }
  std::shuffle(accepted.begin(), accepted.end(), rng);

  ParticleTracker alive(n);
  BdJumpResult res;
  res.jump_to.resize(n);
  std::iota(res.jump_to.begin(), res.jump_to.end(), 0);
  for (int i : accepted) {
    if (!alive.is_alive(i)) continue;
    if (alive.n_alive() < 2) continue;
    if (rates[i] > 0.0) {
      alive.kill(i);  // dies first, so the draw below cannot return i
      int j = alive.choose(rng);
      res.jump_to[i] = j;  // i is over-represented: replace it by j
    } else {
      int j;
      do j = alive.choose(rng); while (j == i);
      res.jump_to[j] = i;  // i is under-represented: clone it over j
      alive.kill(j);
    }
  }

  Eigen::MatrixXd out(n, positions.cols());
  for (int i = 0; i < n; ++i) {
    out.row(i) = positions.row(res.jump_to[i]);
    res.replaced += (res.jump_to[i] != i);
  }
  positions = std::move(out);
  return res;
}

struct BdRoundInfo {
  double bandwidth = 0.0;
  double rate_scale = 0.0;
  double mean_abs_rate = 0.0;
  int jumps = 0;
};

/// Full round: bandwidth (median heuristic unless pinned), rates from the
/// given minus-log-density values, adaptive scale, then one jump sweep.
/// Exactly N potential evaluations.
inline BdRoundInfo bd_round(Eigen::MatrixXd& positions, const SupportSpace& space,
                            const std::function<double(const Eigen::VectorXd&)>& potential,
                            const Eigen::MatrixXd& metric, const BdConfig& cfg, double gamma,
                            SplitMix64& rng) {
  const int n = static_cast<int>(positions.rows());
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = potential(positions.row(i));

  BdRoundInfo info;
  info.bandwidth = cfg.fixed_bandwidth ? *cfg.fixed_bandwidth
                                       : median_bandwidth(positions, metric, space);
  SmoothingKernel kernel(metric, info.bandwidth, space, cfg.wrap_truncation);
  Eigen::VectorXd rates = compute_rates(positions, v, kernel, cfg.rate_form);
  info.mean_abs_rate = rates.array().abs().mean();
  info.rate_scale = adapt_rate_scale(rates, cfg.max_jump_fraction, cfg.c_max);
  info.jumps = bd_jump(positions, rates, info.rate_scale, gamma, rng).replaced;
  return info;
}

}  // namespace lbd
