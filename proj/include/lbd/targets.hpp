#pragma once

// Benchmark potentials V = -ln p (up to a constant) with analytic gradients.
// Each one also offers a direct sampler used as the reference oracle for
// convergence diagnostics.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "lbd/errors.hpp"
#include "lbd/math.hpp"
#include "lbd/rng.hpp"
#include "lbd/support_space.hpp"

namespace lbd {

class Potential {
 public:
  explicit Potential(SupportSpace space) : space_(std::move(space)) {}
  virtual ~Potential() = default;

  int dim() const { return space_.dim(); }
  const SupportSpace& space() const { return space_; }

  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;

  /// i.i.d. draws from the normalized density, one row per sample. Targets
  /// without a tractable sampler keep the default and throw; callers that can
  /// degrade gracefully should check has_direct_sampler first.
  virtual Eigen::MatrixXd direct_sample(int /*n*/, std::uint64_t /*seed*/) const {
    throw ContractViolation("this potential has no direct sampler");
  }
  virtual bool has_direct_sampler() const { return false; }

 private:
  SupportSpace space_;
};

// ---------------------------------------------------------------------------
// Hybrid Rosenbrock: one shared head x1 and n2 independent chains of length
// n1 - 1 hanging off it,
//   V(x) = a (x1 - mu)^2 + sum_{j,i} b_ji (x_ji - x_{j,i-1}^2)^2,
// dimension (n1 - 1) n2 + 1. Conditionally Gaussian along the chains, which
// gives both the exact sampler and strongly anisotropic curvature.
// ---------------------------------------------------------------------------

class HybridRosenbrock final : public Potential {
 public:
  HybridRosenbrock(double a, double mu, Eigen::MatrixXd b)
      : Potential(SupportSpace::unbounded(static_cast<int>(b.rows() * b.cols() + 1))),
        a_(a),
        mu_(mu),
        b_(std::move(b)) {
    if (a_ <= 0.0 || (b_.array() <= 0.0).any())
      throw ContractViolation("HybridRosenbrock: precision parameters must be positive");
  }

  /// Uniform-coefficient construction: n2 chains, each with n1 - 1 links.
  HybridRosenbrock(double a, double b, double mu, int n1, int n2)
      : HybridRosenbrock(a, mu, Eigen::MatrixXd::Constant(n2, n1 - 1, b)) {}

  /// The 10-d benchmark instance: a = 30, b = 20, mu = 1, n1 = 4, n2 = 3.
  static HybridRosenbrock benchmark10() { return HybridRosenbrock(30.0, 20.0, 1.0, 4, 3); }

  int chains() const { return static_cast<int>(b_.rows()); }
  int links() const { return static_cast<int>(b_.cols()); }

  double value(const Eigen::VectorXd& x) const override {
    double v = a_ * sq(x[0] - mu_);
    for (int j = 0; j < chains(); ++j) {
      double prev = x[0];
      for (int i = 0; i < links(); ++i) {
        double xi = x[idx(j, i)];
        v += b_(j, i) * sq(xi - prev * prev);
        prev = xi;
      }
    }
    return v;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
    g[0] = 2.0 * a_ * (x[0] - mu_);
    for (int j = 0; j < chains(); ++j) {
      double prev = x[0];
      int prev_idx = 0;
      for (int i = 0; i < links(); ++i) {
        int k = idx(j, i);
        double r = x[k] - prev * prev;
        g[k] += 2.0 * b_(j, i) * r;
        g[prev_idx] -= 4.0 * b_(j, i) * r * prev;
        prev = x[k];
        prev_idx = k;
      }
    }
    return g;
  }

  /// Exact draw through the conditional cascade:
  /// x1 ~ N(mu, 1/(2a)), then x_ji | x_{j,i-1} ~ N(x_{j,i-1}^2, 1/(2 b_ji)).
  Eigen::MatrixXd direct_sample(int n, std::uint64_t seed) const override {
    Eigen::MatrixXd out(n, dim());
    for (int s = 0; s < n; ++s) {
      SplitMix64 g = keyed_stream(seed, 0x6872u, static_cast<std::uint64_t>(s));
      double x1 = mu_ + standard_normal(g) / std::sqrt(2.0 * a_);
      out(s, 0) = x1;
      for (int j = 0; j < chains(); ++j) {
        double prev = x1;
        for (int i = 0; i < links(); ++i) {
          double xi = prev * prev + standard_normal(g) / std::sqrt(2.0 * b_(j, i));
          out(s, idx(j, i)) = xi;
          prev = xi;
        }
      }
    }
    return out;
  }
  bool has_direct_sampler() const override { return true; }

 private:
  static double sq(double t) { return t * t; }
  int idx(int j, int i) const { return 1 + j * links() + i; }

  double a_, mu_;
  Eigen::MatrixXd b_;  // chains x links
};

// ---------------------------------------------------------------------------
// Planar Gaussian mixture with components laid out on concentric rings.
// ---------------------------------------------------------------------------

class RingMixture final : public Potential {
 public:
  struct Ring {
    double radius;
    double weight;  // total weight of the ring, split evenly over its modes
    int modes;
  };

  RingMixture(std::vector<Ring> rings, double sigma)
      : Potential(SupportSpace::unbounded(2)), sigma_(sigma), rings_(std::move(rings)) {
    if (sigma <= 0.0) throw ContractViolation("RingMixture: sigma must be positive");
    double total = 0.0;
    for (const Ring& r : rings_) {
      for (int k = 0; k < r.modes; ++k) {
        double th = two_pi * k / r.modes;
        means_.emplace_back(r.radius * std::cos(th), r.radius * std::sin(th));
        weights_.push_back(r.weight / r.modes);
      }
      total += r.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw ContractViolation("RingMixture: ring weights must sum to 1");
    log_w_.resize(weights_.size());
    for (std::size_t k = 0; k < weights_.size(); ++k) log_w_[k] = std::log(weights_[k]);
  }

  /// The two-ring benchmark: inner ring radius 3 with weight 0.1, outer ring
  /// radius 6 with weight 0.9, six modes each.
  static RingMixture two_ring(double sigma = 0.5) {
    return RingMixture({{3.0, 0.1, 6}, {6.0, 0.9, 6}}, sigma);
  }

  double sigma() const { return sigma_; }
  const std::vector<Ring>& rings() const { return rings_; }
  const std::vector<Eigen::Vector2d>& component_means() const { return means_; }
  const std::vector<double>& component_weights() const { return weights_; }

  double value(const Eigen::VectorXd& x) const override {
    std::vector<double> t(means_.size());
    component_logs(x, t);
    return -log_sum_exp(t);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    std::vector<double> t(means_.size());
    component_logs(x, t);
    double lse = log_sum_exp(t);
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < means_.size(); ++k) {
      double resp = std::exp(t[k] - lse);  // posterior responsibility
      g += resp * (Eigen::Vector2d(x[0], x[1]) - means_[k]) / (sigma_ * sigma_);
    }
    return g;
  }

  Eigen::MatrixXd direct_sample(int n, std::uint64_t seed) const override {
    Eigen::MatrixXd out(n, 2);
    for (int s = 0; s < n; ++s) {
      SplitMix64 g = keyed_stream(seed, 0x726Du, static_cast<std::uint64_t>(s));
      double u = uniform_open(g);
      std::size_t k = 0;
      double acc = weights_[0];
      while (u > acc && k + 1 < weights_.size()) acc += weights_[++k];
      out(s, 0) = means_[k][0] + sigma_ * standard_normal(g);
      out(s, 1) = means_[k][1] + sigma_ * standard_normal(g);
    }
    return out;
  }
  bool has_direct_sampler() const override { return true; }

 private:
  void component_logs(const Eigen::VectorXd& x, std::vector<double>& t) const {
    double inv2s2 = 1.0 / (2.0 * sigma_ * sigma_);
    double norm = -std::log(two_pi * sigma_ * sigma_);
    for (std::size_t k = 0; k < means_.size(); ++k) {
      double dx = x[0] - means_[k][0], dy = x[1] - means_[k][1];
      t[k] = log_w_[k] + norm - (dx * dx + dy * dy) * inv2s2;
    }
  }

  double sigma_;
  std::vector<Ring> rings_;
  std::vector<Eigen::Vector2d> means_;
  std::vector<double> weights_, log_w_;
};

// ---------------------------------------------------------------------------
// Isotropic Gaussian, mostly for calibration runs and tests.
// ---------------------------------------------------------------------------

class IsotropicGaussian final : public Potential {
 public:
  explicit IsotropicGaussian(int dim, double sigma = 1.0, Eigen::VectorXd center = {})
      : Potential(SupportSpace::unbounded(dim)), sigma_(sigma), center_(std::move(center)) {
    if (sigma <= 0.0) throw ContractViolation("IsotropicGaussian: sigma must be positive");
    if (center_.size() == 0) center_ = Eigen::VectorXd::Zero(dim);
    if (center_.size() != dim) throw ContractViolation("IsotropicGaussian: center size mismatch");
  }

  double value(const Eigen::VectorXd& x) const override {
    return (x - center_).squaredNorm() / (2.0 * sigma_ * sigma_);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return (x - center_) / (sigma_ * sigma_);
  }

  Eigen::MatrixXd direct_sample(int n, std::uint64_t seed) const override {
    Eigen::MatrixXd out(n, dim());
    for (int s = 0; s < n; ++s) {
      SplitMix64 g = keyed_stream(seed, 0x6761u, static_cast<std::uint64_t>(s));
      for (int i = 0; i < dim(); ++i) out(s, i) = center_[i] + sigma_ * standard_normal(g);
    }
    return out;
  }
  bool has_direct_sampler() const override { return true; }

 private:
  double sigma_;
  Eigen::VectorXd center_;
};

}  // namespace lbd
