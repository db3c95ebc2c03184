// Command line front end: config-driven runs plus the canned benchmark
// experiments, all emitting CSV.
//
// Exit codes: 0 success, 2 unusable configuration, 3 numerical divergence.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <lbd/lbd.hpp>

namespace fs = std::filesystem;

namespace {

struct GlobalArgs {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = ".";
};

fs::path prepare_out_dir(const GlobalArgs& g) {
  fs::path dir(g.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw lbd::ConfigError("cannot create output directory '" + g.out_dir + "'");
  return dir;
}

void write_trace(const fs::path& dir, const std::string& name, const lbd::TraceSeries& t) {
  lbd::write_file((dir / name).string(), [&](std::ostream& os) { t.write_csv(os); });
  std::printf("wrote %s\n", (dir / name).string().c_str());
}

void write_samples(const fs::path& dir, const std::string& name, const Eigen::MatrixXd& m) {
  lbd::write_file((dir / name).string(), [&](std::ostream& os) { lbd::write_samples_csv(os, m); });
  std::printf("wrote %s\n", (dir / name).string().c_str());
}

void summarize(const char* label, const lbd::SampleRun& r) {
  std::printf("%s: %llu gradient evals, %llu potential evals, %llu bd rounds, %llu jumps, "
              "final epsilon %.6g, %.2fs\n",
              label, static_cast<unsigned long long>(r.counters.gradient_evals),
              static_cast<unsigned long long>(r.counters.potential_evals),
              static_cast<unsigned long long>(r.bd_rounds),
              static_cast<unsigned long long>(r.total_jumps),
              r.trace.size() ? r.trace.epsilon_stats().back() : 0.0, r.wall_seconds);
}

int cmd_run(const GlobalArgs& g, const std::string& config_path, bool seed_set, bool threads_set) {
  lbd::RunConfig cfg = lbd::load_config(config_path);
  if (seed_set) cfg.seed = g.seed;
  if (threads_set) cfg.threads = g.threads;
  lbd::SampleRun r = lbd::run(cfg);
  fs::path dir = prepare_out_dir(g);
  write_samples(dir, "samples.csv", r.samples);
  lbd::write_file((dir / "trace.csv").string(),
                  [&](std::ostream& os) { r.trace.write_csv(os); });
  std::printf("wrote %s\n", (dir / "trace.csv").string().c_str());
  summarize("run", r);
  return 0;
}

int cmd_compare_precond(const GlobalArgs& g, std::uint64_t iterations, int particles) {
  lbd::PrecondOptions opt;
  opt.iterations = iterations;
  opt.n_particles = particles;
  opt.threads = g.threads;
  lbd::PrecondComparison c = lbd::run_precond_comparison(g.seed, opt);
  fs::path dir = prepare_out_dir(g);
  write_trace(dir, "compare_precond.csv", c.traces);
  summarize("fisher", c.fisher);
  summarize("identity", c.identity);
  return 0;
}

int cmd_reparam_sweep(const GlobalArgs& g, std::uint64_t iterations, int particles) {
  lbd::ReparamSweepOptions opt;
  opt.iterations = iterations;
  opt.n_particles = particles;
  opt.threads = g.threads;
  lbd::ReparamSweep s = lbd::run_reparam_sweep(g.seed, opt);
  fs::path dir = prepare_out_dir(g);
  write_trace(dir, "reparam_sweep.csv", s.traces);
  summarize("gauss", s.gauss);
  summarize("logistic", s.logistic);
  summarize("cauchy", s.cauchy);
  return 0;
}

int cmd_two_ring(const GlobalArgs& g, std::uint64_t iterations, int particles) {
  lbd::TwoRingOptions opt;
  opt.iterations = iterations;
  opt.n_particles = particles;
  opt.threads = g.threads;
  lbd::TwoRingExperiment e = lbd::run_two_ring(g.seed, opt);
  fs::path dir = prepare_out_dir(g);
  write_trace(dir, "two_ring_trace.csv", e.traces);
  write_samples(dir, "two_ring_samples_standard.csv", e.standard.samples);
  write_samples(dir, "two_ring_samples_annealed.csv", e.annealed.samples);
  write_samples(dir, "two_ring_samples_annealed_bd.csv", e.annealed_bd.samples);
  auto rw = [](const lbd::SampleRun& r) { return lbd::ring_weight(r.samples, 3.0, 6.0); };
  std::printf("outer-ring weights: standard %.3f, annealed %.3f, annealed+bd %.3f\n",
              rw(e.standard), rw(e.annealed), rw(e.annealed_bd));
  return 0;
}

int cmd_bandwidth_sweep(const GlobalArgs& g, std::uint64_t iterations, int particles) {
  lbd::TwoRingOptions opt;
  opt.iterations = iterations;
  opt.n_particles = particles;
  opt.threads = g.threads;
  lbd::BandwidthSweep s = lbd::run_bandwidth_sweep(g.seed, opt);
  fs::path dir = prepare_out_dir(g);
  write_trace(dir, "bandwidth_sweep.csv", s.traces);
  for (std::size_t i = 0; i < s.runs.size(); ++i)
    std::printf("h=%g: final epsilon %.6g\n", s.bandwidths[i],
                s.runs[i].trace.epsilon_stats().back());
  return 0;
}

int cmd_oracle(const GlobalArgs& g, const std::string& target, int count, double sigma) {
  std::shared_ptr<const lbd::Potential> pot;
  if (target == "hybrid_rosenbrock")
    pot = std::make_shared<lbd::HybridRosenbrock>(lbd::HybridRosenbrock::benchmark10());
  else if (target == "two_ring")
    pot = std::make_shared<lbd::RingMixture>(lbd::RingMixture::two_ring(sigma));
  else if (target == "gaussian")
    pot = std::make_shared<lbd::IsotropicGaussian>(2, sigma);
  else
    throw lbd::ConfigError("oracle: unknown target '" + target + "'");
  Eigen::MatrixXd s = pot->direct_sample(count, g.seed);
  write_samples(prepare_out_dir(g), "oracle_samples.csv", s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ensemble Langevin sampler with Fisher preconditioning, quantile "
               "reparameterization, annealing and birth-death jumps"};
  app.require_subcommand(1);

  GlobalArgs g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Base seed for all random streams");
  auto* threads_opt = app.add_option("--threads", g.threads, "Worker threads (results do not depend on this)");
  app.add_option("--out-dir", g.out_dir, "Directory for CSV output")->capture_default_str();

  std::string config_path;
  auto* c_run = app.add_subcommand("run", "Run one configured sampling job");
  c_run->add_option("--config", config_path, "JSON run configuration")->required();

  auto* c_pre = app.add_subcommand("compare-precond",
                                   "Fisher vs identity metric on the 10-d hybrid Rosenbrock");
  auto* c_rep = app.add_subcommand("reparam-sweep",
                                   "Quantile family sweep on the box-constrained hybrid Rosenbrock");
  auto* c_ring = app.add_subcommand("two-ring",
                                    "Standard vs annealed vs annealed+birth-death on the two-ring mixture");
  auto* c_bw = app.add_subcommand("bandwidth-sweep",
                                  "Fixed kernel bandwidth sensitivity on the two-ring mixture");

  std::string oracle_target = "two_ring";
  int oracle_count = 2000;
  double oracle_sigma = 0.5;
  auto* c_oracle = app.add_subcommand("oracle", "Draw exact reference samples from a benchmark target");
  c_oracle->add_option("--target", oracle_target, "hybrid_rosenbrock | two_ring | gaussian")
      ->capture_default_str();
  c_oracle->add_option("--count", oracle_count, "Number of samples")->capture_default_str();
  c_oracle->add_option("--sigma", oracle_sigma, "Component scale where applicable")
      ->capture_default_str();

  // Global options may trail the subcommand name.
  for (CLI::App* sc : {c_run, c_pre, c_rep, c_ring, c_bw, c_oracle}) sc->fallthrough();

  std::uint64_t pre_iters = 10000, rep_iters = 10000, ring_iters = 1000, bw_iters = 1000;
  int pre_n = 200, rep_n = 200, ring_n = 200, bw_n = 200;
  c_pre->add_option("--iterations", pre_iters)->capture_default_str();
  c_pre->add_option("--particles", pre_n)->capture_default_str();
  c_rep->add_option("--iterations", rep_iters)->capture_default_str();
  c_rep->add_option("--particles", rep_n)->capture_default_str();
  c_ring->add_option("--iterations", ring_iters)->capture_default_str();
  c_ring->add_option("--particles", ring_n)->capture_default_str();
  c_bw->add_option("--iterations", bw_iters)->capture_default_str();
  c_bw->add_option("--particles", bw_n)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_run->parsed()) return cmd_run(g, config_path, static_cast<bool>(*seed_opt),
                                        static_cast<bool>(*threads_opt));
    if (c_pre->parsed()) return cmd_compare_precond(g, pre_iters, pre_n);
    if (c_rep->parsed()) return cmd_reparam_sweep(g, rep_iters, rep_n);
    if (c_ring->parsed()) return cmd_two_ring(g, ring_iters, ring_n);
    if (c_bw->parsed()) return cmd_bandwidth_sweep(g, bw_iters, bw_n);
    if (c_oracle->parsed()) return cmd_oracle(g, oracle_target, oracle_count, oracle_sigma);
  } catch (const lbd::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const lbd::ContractViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const lbd::DivergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
