#pragma once

// Run orchestration. One run wires together: initialization on the support,
// push into working coordinates, the annealed preconditioned diffusion,
// periodic birth-death rounds against the current tempered target, and trace
// recording against a held-out reference sample. Identical configuration and
// seed reproduce identical output bit for bit, independent of the worker
// count.

#include <Eigen/Dense>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lbd/birth_death.hpp"
#include "lbd/diagnostics.hpp"
#include "lbd/errors.hpp"
#include "lbd/fisher.hpp"
#include "lbd/langevin.hpp"
#include "lbd/parallel.hpp"
#include "lbd/reparam.hpp"
#include "lbd/rng.hpp"
#include "lbd/targets.hpp"

namespace lbd {

struct InitSpec {
  enum class Kind { UniformBox, GaussianCloud };
  Kind kind = Kind::GaussianCloud;
  // UniformBox: per-coordinate box, must intersect the support interior.
  Eigen::VectorXd lower, upper;
  // GaussianCloud around center (origin if empty).
  double sigma = 1.0;
  Eigen::VectorXd center;

  static InitSpec uniform(Eigen::VectorXd lo, Eigen::VectorXd hi) {
    InitSpec s;
    s.kind = Kind::UniformBox;
    s.lower = std::move(lo);
    s.upper = std::move(hi);
    return s;
  }
  static InitSpec uniform(double lo, double hi, int dim) {
    return uniform(Eigen::VectorXd::Constant(dim, lo), Eigen::VectorXd::Constant(dim, hi));
  }
  static InitSpec gaussian(double sigma, Eigen::VectorXd center = {}) {
    InitSpec s;
    s.kind = Kind::GaussianCloud;
    s.sigma = sigma;
    s.center = std::move(center);
    return s;
  }
};

struct RunConfig {
  std::shared_ptr<const Potential> target;
  std::optional<SupportSpace> space;  // overrides the target's own support
  RandomVariableFamily family{FamilyKind::Logistic};

  int n_particles = 0;
  std::uint64_t iterations = 0;
  double tau = 0.0;
  std::uint64_t seed = 0;

  bool precondition = true;
  int fisher_stride = 10;
  double lambda = 1e-3;

  bool anneal = false;
  double beta_min = 1e-5;

  bool bd = false;
  int bd_stride = 1;
  BdConfig bd_config;

  InitSpec init;
  int diag_stride = 100;
  int reference_count = 2000;              // 0 disables the oracle reference
  std::optional<Eigen::MatrixXd> reference;  // explicit reference sample
  int threads = 1;
};

struct RunCounters {
  std::uint64_t gradient_evals = 0;
  std::uint64_t potential_evals = 0;
};

struct SampleRun {
  Eigen::MatrixXd samples;  // final ensemble, support coordinates
  ConvergenceTrace trace;
  RunCounters counters;
  std::uint64_t bd_rounds = 0;
  std::uint64_t total_jumps = 0;
  std::vector<int> bd_jump_counts;  // realized jumps, one entry per round
  double wall_seconds = 0.0;
};

namespace detail {

/// Counts every evaluation that reaches the wrapped target.
class CountingPotential final : public Potential {
 public:
  explicit CountingPotential(std::shared_ptr<const Potential> inner)
      : Potential(inner->space()), inner_(std::move(inner)) {}

  double value(const Eigen::VectorXd& x) const override {
    values_.fetch_add(1, std::memory_order_relaxed);
    return inner_->value(x);
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    gradients_.fetch_add(1, std::memory_order_relaxed);
    return inner_->gradient(x);
  }

  std::uint64_t values() const { return values_.load(); }
  std::uint64_t gradients() const { return gradients_.load(); }

 private:
  std::shared_ptr<const Potential> inner_;
  mutable std::atomic<std::uint64_t> values_{0};
  mutable std::atomic<std::uint64_t> gradients_{0};
};

inline Eigen::MatrixXd draw_init(const InitSpec& init, const SupportSpace& space, int n,
                                 std::uint64_t seed) {
  const int d = space.dim();
  Eigen::MatrixXd x(n, d);
  SplitMix64 g = keyed_stream(seed, 0x1A17u);
  Eigen::VectorXd center = init.center.size() ? init.center : Eigen::VectorXd::Zero(d);
  if (init.kind == InitSpec::Kind::UniformBox &&
      (init.lower.size() != d || init.upper.size() != d ||
       (init.lower.array() >= init.upper.array()).any()))
    throw ContractViolation("init: uniform box needs lower < upper in every coordinate");
  if (init.kind == InitSpec::Kind::GaussianCloud && center.size() != d)
    throw ContractViolation("init: center dimension mismatch");

  for (int p = 0; p < n; ++p) {
    // Points outside the support are rejected and redrawn.
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 10000)
        throw ContractViolation("init: could not place a particle inside the support");
      Eigen::VectorXd v(d);
      if (init.kind == InitSpec::Kind::UniformBox) {
        for (int i = 0; i < d; ++i)
          v[i] = init.lower[i] + (init.upper[i] - init.lower[i]) * uniform_open(g);
      } else {
        for (int i = 0; i < d; ++i) v[i] = center[i] + init.sigma * standard_normal(g);
      }
      v = space.wrap(v);
      if (space.contains(v)) {
        x.row(p) = v;
        break;
      }
    }
  }
  return x;
}

}  // namespace detail

inline void validate(const RunConfig& cfg) {
  if (!cfg.target) throw ContractViolation("run: target is required");
  if (cfg.n_particles < 2) throw ContractViolation("run: need at least two particles");
  if (cfg.iterations < 1) throw ContractViolation("run: need at least one iteration");
  if (!(cfg.tau > 0.0)) throw ContractViolation("run: tau must be positive");
  if (cfg.fisher_stride < 1) throw ContractViolation("run: fisher_stride must be >= 1");
  if (!(cfg.lambda >= 0.0)) throw ContractViolation("run: lambda must be >= 0");
  if (!(cfg.beta_min > 0.0 && cfg.beta_min <= 1.0))
    throw ContractViolation("run: beta_min must lie in (0, 1]");
  if (cfg.bd_stride < 1) throw ContractViolation("run: bd_stride must be >= 1");
  if (cfg.diag_stride < 1) throw ContractViolation("run: diag_stride must be >= 1");
  if (cfg.threads < 1) throw ContractViolation("run: threads must be >= 1");
  if (cfg.space && cfg.space->dim() != cfg.target->dim())
    throw ContractViolation("run: space dimension does not match the target");
}

inline SampleRun run(const RunConfig& cfg) {
  validate(cfg);
  auto t0 = std::chrono::steady_clock::now();

  auto target = std::make_shared<detail::CountingPotential>(cfg.target);
  const SupportSpace space = cfg.space ? *cfg.space : cfg.target->space();
  const Reparameterization map(cfg.family, space);
  const int n = cfg.n_particles;
  const int d = space.dim();
  const std::uint64_t total = cfg.iterations;
  const double gamma = cfg.bd_config.gamma.value_or(0.01 * cfg.tau);

  // Reference sample for the trace, drawn once from the target's oracle.
  Eigen::MatrixXd reference;
  double ref_self = -1.0;
  if (cfg.reference) {
    reference = *cfg.reference;
  } else if (cfg.reference_count > 0 && cfg.target->has_direct_sampler()) {
    reference = cfg.target->direct_sample(cfg.reference_count, keyed_stream(cfg.seed, 0x0EF5u)());
  }
  const bool have_reference = reference.rows() >= 2;
  if (have_reference) ref_self = mean_offdiag_distance(reference);

  // Initialize on the support, then move to working coordinates.
  Eigen::MatrixXd x0 = detail::draw_init(cfg.init, space, n, cfg.seed);
  Eigen::MatrixXd y0(n, d);
  for (int p = 0; p < n; ++p) y0.row(p) = map.push(x0.row(p));
  Ensemble ens(std::move(y0), space);

  SampleRun out;
  std::optional<FisherPreconditioner> pre;
  Eigen::MatrixXd grads(n, d);
  Eigen::MatrixXd metric_identity = Eigen::MatrixXd::Identity(d, d);
  int jumps_since_record = 0;
  double last_bandwidth = 0.0;

  auto record = [&](std::uint64_t l, double beta) {
    double eps = 0.0;
    if (have_reference) {
      Eigen::MatrixXd pulled(n, d);
      for (int p = 0; p < n; ++p) pulled.row(p) = map.pull(ens.positions.row(p));
      eps = energy_distance(pulled, reference, ref_self).stat;
    }
    out.trace.append(l, eps, beta, jumps_since_record, last_bandwidth);
    jumps_since_record = 0;
  };

  for (std::uint64_t l = 1; l <= total; ++l) {
    const double beta = cfg.anneal ? beta_at(cfg.beta_min, l, total) : 1.0;

    parallel_for(n, cfg.threads, [&](int p) {
      grads.row(p) = map.pushforward_gradient(*target, ens.positions.row(p), beta);
    });

    // A particle can sit at a finite position whose gradient has overflowed,
    // or grown far past anything a non-exploding flow produces; squaring such
    // values poisons the metric estimate, so report divergence here rather
    // than letting the factorization fail with an opaque error.
    for (int p = 0; p < n; ++p)
      if (!grads.row(p).allFinite() || grads.row(p).cwiseAbs().maxCoeff() > 1e50)
        throw DivergenceError(l, p, "dynamics diverged at iteration " + std::to_string(l) +
                                        ", particle " + std::to_string(p));

    if (cfg.precondition && (l - 1) % static_cast<std::uint64_t>(cfg.fisher_stride) == 0) {
      try {
        pre.emplace(estimate_fisher(grads, cfg.lambda));
      } catch (const ContractViolation&) {
        // With positive damping the factorization can only fail once the
        // gradient scale squared overwhelms lambda in double precision, i.e.
        // after the flow has already blown up; report the worst particle.
        if (!(cfg.lambda > 0.0)) throw;
        Eigen::Index worst = 0;
        grads.cwiseAbs().rowwise().maxCoeff().maxCoeff(&worst);
        throw DivergenceError(l, static_cast<std::int64_t>(worst),
                              "dynamics diverged at iteration " + std::to_string(l) +
                                  ", particle " + std::to_string(worst));
      }
    }

    annealed_step(ens, grads, cfg.tau, beta, pre ? &*pre : nullptr,
                  keyed_noise(cfg.seed, l, d));

    for (int p = 0; p < n; ++p)
      if (!ens.positions.row(p).allFinite())
        throw DivergenceError(l, p, "dynamics diverged at iteration " + std::to_string(l) +
                                        ", particle " + std::to_string(p));

    if (cfg.bd && l % static_cast<std::uint64_t>(cfg.bd_stride) == 0) {
      SplitMix64 bd_rng = keyed_stream(cfg.seed, 0xBD01u, l);
      const Eigen::MatrixXd& metric = pre ? pre->matrix() : metric_identity;
      auto pot = [&](const Eigen::VectorXd& y) {
        return map.stationary_potential(*target, y, beta);
      };
      BdRoundInfo info =
          bd_round(ens.positions, space, pot, metric, cfg.bd_config, gamma, bd_rng);
      out.bd_rounds += 1;
      out.total_jumps += static_cast<std::uint64_t>(info.jumps);
      out.bd_jump_counts.push_back(info.jumps);
      jumps_since_record += info.jumps;
      last_bandwidth = info.bandwidth;
    }

    if (l % static_cast<std::uint64_t>(cfg.diag_stride) == 0 || l == total) record(l, beta);
  }

  out.samples.resize(n, d);
  for (int p = 0; p < n; ++p) out.samples.row(p) = map.pull(ens.positions.row(p));
  out.counters.gradient_evals = target->gradients();
  out.counters.potential_evals = target->values();
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace lbd
