#pragma once

// Canned benchmark experiments, shared between the command line tool and the
// acceptance suite. Each builds the documented configuration, runs it for one
// seed and returns the traces plus final ensembles.

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lbd/csv.hpp"
#include "lbd/sampler.hpp"

namespace lbd {

// ---------------------------------------------------------------------------
// Preconditioning comparison on the unconstrained 10-d hybrid Rosenbrock:
// Fisher metric at tau = 2 against the identity metric at tau = 0.001,
// N = 200 particles initialized uniformly in [-5, 5]^10.
// ---------------------------------------------------------------------------

struct PrecondOptions {
  int n_particles = 200;
  std::uint64_t iterations = 10000;
  double tau_fisher = 2.0;
  double tau_identity = 0.001;
  double lambda = 1e-3;
  int fisher_stride = 10;
  // The quartic tails make the plain flow explode when a particle starts out
  // where tau * curvature > 2; shrinking the box below ~2.2 keeps every seed
  // finite at tau = 0.001.
  double init_lo = -5.0;
  double init_hi = 5.0;
  int diag_stride = 100;
  int reference_count = 2000;
  int threads = 1;
};

struct PrecondComparison {
  SampleRun fisher, identity;
  TraceSeries traces;
};

inline RunConfig hybrid_rosenbrock_base(std::uint64_t seed, int n, std::uint64_t iters,
                                        int diag_stride, int reference_count, int threads) {
  RunConfig cfg;
  cfg.target = std::make_shared<HybridRosenbrock>(HybridRosenbrock::benchmark10());
  cfg.n_particles = n;
  cfg.iterations = iters;
  cfg.seed = seed;
  cfg.init = InitSpec::uniform(-5.0, 5.0, cfg.target->dim());
  cfg.diag_stride = diag_stride;
  cfg.reference_count = reference_count;
  cfg.threads = threads;
  return cfg;
}

inline PrecondComparison run_precond_comparison(std::uint64_t seed,
                                                const PrecondOptions& opt = {}) {
  RunConfig base = hybrid_rosenbrock_base(seed, opt.n_particles, opt.iterations,
                                          opt.diag_stride, opt.reference_count, opt.threads);
  base.lambda = opt.lambda;
  base.fisher_stride = opt.fisher_stride;
  base.init = InitSpec::uniform(opt.init_lo, opt.init_hi, base.target->dim());

  RunConfig fisher = base;
  fisher.precondition = true;
  fisher.tau = opt.tau_fisher;

  RunConfig identity = base;
  identity.precondition = false;
  identity.tau = opt.tau_identity;

  PrecondComparison out;
  out.fisher = run(fisher);
  out.identity = run(identity);
  out.traces.iterations = out.fisher.trace.iterations();
  out.traces.add_column("fisher", out.fisher.trace.epsilon_stats());
  out.traces.add_column("identity", out.identity.trace.epsilon_stats());
  return out;
}

// ---------------------------------------------------------------------------
// Reparameterization sweep: the same 10-d hybrid Rosenbrock restricted to
// [-5, 5]^10, Fisher-preconditioned, once per quantile family.
// ---------------------------------------------------------------------------

struct ReparamSweepOptions {
  int n_particles = 200;
  std::uint64_t iterations = 10000;
  double tau = 2.0;
  double lambda = 1e-3;
  // At tau = 2 the ensemble moves far in one step, so a metric held over ten
  // steps goes stale and the flow blows up; refreshing every step is the only
  // cadence that stays finite here.
  int fisher_stride = 1;
  int diag_stride = 100;
  int reference_count = 2000;
  int threads = 1;
};

struct ReparamSweep {
  SampleRun gauss, logistic, cauchy;
  TraceSeries traces;
};

inline ReparamSweep run_reparam_sweep(std::uint64_t seed, const ReparamSweepOptions& opt = {}) {
  RunConfig base = hybrid_rosenbrock_base(seed, opt.n_particles, opt.iterations,
                                          opt.diag_stride, opt.reference_count, opt.threads);
  base.tau = opt.tau;
  base.lambda = opt.lambda;
  base.fisher_stride = opt.fisher_stride;
  base.precondition = true;
  int d = base.target->dim();
  base.space = SupportSpace::box(Eigen::VectorXd::Constant(d, -5.0),
                                 Eigen::VectorXd::Constant(d, 5.0));

  ReparamSweep out;
  auto one = [&](FamilyKind k) {
    RunConfig cfg = base;
    cfg.family = RandomVariableFamily(k);
    return run(cfg);
  };
  out.gauss = one(FamilyKind::Gaussian);
  out.logistic = one(FamilyKind::Logistic);
  out.cauchy = one(FamilyKind::Cauchy);
  out.traces.iterations = out.gauss.trace.iterations();
  out.traces.add_column("Gauss", out.gauss.trace.epsilon_stats());
  out.traces.add_column("Logistic", out.logistic.trace.epsilon_stats());
  out.traces.add_column("Cauchy", out.cauchy.trace.epsilon_stats());
  return out;
}

// ---------------------------------------------------------------------------
// Two-ring mixture: standard diffusion, annealed diffusion, and annealed
// diffusion with birth-death, from a N(0, I) start. Unpreconditioned.
//
// Ring width 0.25 puts the inter-ring barrier far above the unit-temperature
// noise, so the plain run genuinely sticks to the inner ring. The smoothing
// scale is pinned near the ring width: on this geometry the pairwise-median
// heuristic lands on inter-mode distances, and a kernel that wide stops
// seeing the ring populations and drains the inner ring outright. The jump
// clock gamma = 0.3 is enough to finish rebalancing within the run while
// keeping end-state churn (and its epsilon noise) small.
// ---------------------------------------------------------------------------

struct TwoRingOptions {
  int n_particles = 200;
  std::uint64_t iterations = 1000;
  double tau = 0.01;
  double beta_min = 1e-5;
  int bd_stride = 5;
  double gamma = 0.3;
  double max_jump_fraction = 0.05;
  std::optional<double> fixed_bandwidth = 1.0;
  double sigma = 0.25;
  int diag_stride = 20;
  int reference_count = 2000;
  int threads = 1;
};

struct TwoRingExperiment {
  SampleRun standard, annealed, annealed_bd;
  TraceSeries traces;
};

inline RunConfig two_ring_base(std::uint64_t seed, const TwoRingOptions& opt) {
  RunConfig cfg;
  cfg.target = std::make_shared<RingMixture>(RingMixture::two_ring(opt.sigma));
  cfg.n_particles = opt.n_particles;
  cfg.iterations = opt.iterations;
  cfg.tau = opt.tau;
  cfg.seed = seed;
  cfg.precondition = false;
  cfg.beta_min = opt.beta_min;
  cfg.init = InitSpec::gaussian(1.0);
  cfg.diag_stride = opt.diag_stride;
  cfg.reference_count = opt.reference_count;
  cfg.threads = opt.threads;
  cfg.bd_stride = opt.bd_stride;
  cfg.bd_config.gamma = opt.gamma;
  cfg.bd_config.max_jump_fraction = opt.max_jump_fraction;
  cfg.bd_config.fixed_bandwidth = opt.fixed_bandwidth;
  return cfg;
}

inline TwoRingExperiment run_two_ring(std::uint64_t seed, const TwoRingOptions& opt = {}) {
  RunConfig base = two_ring_base(seed, opt);

  RunConfig standard = base;
  RunConfig annealed = base;
  annealed.anneal = true;
  RunConfig full = annealed;
  full.bd = true;

  TwoRingExperiment out;
  out.standard = run(standard);
  out.annealed = run(annealed);
  out.annealed_bd = run(full);
  out.traces.iterations = out.standard.trace.iterations();
  out.traces.add_column("Standard", out.standard.trace.epsilon_stats());
  out.traces.add_column("Annealed", out.annealed.trace.epsilon_stats());
  out.traces.add_column("Annealed+BD", out.annealed_bd.trace.epsilon_stats());
  return out;
}

// ---------------------------------------------------------------------------
// Bandwidth sensitivity: the annealed+BD two-ring run repeated with fixed
// smoothing bandwidths spanning four orders of magnitude.
// ---------------------------------------------------------------------------

struct BandwidthSweep {
  std::vector<double> bandwidths;
  std::vector<SampleRun> runs;
  TraceSeries traces;
};

inline BandwidthSweep run_bandwidth_sweep(std::uint64_t seed, const TwoRingOptions& opt = {},
                                          std::vector<double> bandwidths = {0.01, 1.0, 100.0}) {
  BandwidthSweep out;
  out.bandwidths = bandwidths;
  for (double h : bandwidths) {
    TwoRingOptions o = opt;
    o.fixed_bandwidth = h;
    RunConfig cfg = two_ring_base(seed, o);
    cfg.anneal = true;
    cfg.bd = true;
    out.runs.push_back(run(cfg));
    if (out.traces.iterations.empty())
      out.traces.iterations = out.runs.back().trace.iterations();
    out.traces.add_column("h=" + format_double(h, "%g"), out.runs.back().trace.epsilon_stats());
  }
  return out;
}

/// Centroid assignment of samples to mixture components; returns per-mode
/// counts. Used to decide whether every mode was visited.
inline std::vector<int> mode_counts(const Eigen::MatrixXd& samples, const RingMixture& target) {
  const auto& means = target.component_means();
  std::vector<int> counts(means.size(), 0);
  for (int s = 0; s < samples.rows(); ++s) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < means.size(); ++k) {
      double d = (Eigen::Vector2d(samples(s, 0), samples(s, 1)) - means[k]).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(k);
      }
    }
    counts[best] += 1;
  }
  return counts;
}

}  // namespace lbd
