#pragma once

// JSON run configuration. Unknown keys are rejected and missing required keys
// are named, so typos fail fast instead of silently running defaults.

#include <json.hpp>

#include <fstream>
#include <memory>
#include <set>
#include <string>

#include "lbd/errors.hpp"
#include "lbd/sampler.hpp"

namespace lbd {

namespace detail {

inline bool parse_flag(const nlohmann::json& v, const std::string& key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "on") return true;
    if (s == "off") return false;
  }
  throw ConfigError("config: key '" + key + "' must be true/false or \"on\"/\"off\"");
}

inline std::shared_ptr<const Potential> parse_target(const nlohmann::json& t) {
  if (!t.is_object() || !t.contains("kind"))
    throw ConfigError("config: 'target' must be an object with a 'kind'");
  std::string kind = t.at("kind").get<std::string>();
  if (kind == "hybrid_rosenbrock") {
    double a = t.value("a", 30.0);
    double b = t.value("b", 20.0);
    double mu = t.value("mu", 1.0);
    int n1 = t.value("n1", 4);
    int n2 = t.value("n2", 3);
    if (n1 < 2 || n2 < 1) throw ConfigError("config: hybrid_rosenbrock needs n1 >= 2, n2 >= 1");
    return std::make_shared<HybridRosenbrock>(a, b, mu, n1, n2);
  }
  if (kind == "two_ring") {
    return std::make_shared<RingMixture>(RingMixture::two_ring(t.value("sigma", 0.5)));
  }
  if (kind == "gaussian") {
    if (!t.contains("dim")) throw ConfigError("config: gaussian target needs 'dim'");
    return std::make_shared<IsotropicGaussian>(t.at("dim").get<int>(), t.value("sigma", 1.0));
  }
  throw ConfigError("config: unknown target kind '" + kind + "'");
}

inline SupportSpace parse_space(const nlohmann::json& s, int dim) {
  if (s.is_string() && s.get<std::string>() == "unbounded") return SupportSpace::unbounded(dim);
  if (!s.is_object()) throw ConfigError("config: 'space' must be an object or \"unbounded\"");
  std::vector<Coord> coords;
  auto periodic = s.value("periodic", std::vector<bool>{});
  if (s.contains("lower") != s.contains("upper"))
    throw ConfigError("config: space needs both 'lower' and 'upper'");
  if (s.contains("lower")) {
    auto lo = s.at("lower").get<std::vector<double>>();
    auto hi = s.at("upper").get<std::vector<double>>();
    if (lo.size() != hi.size()) throw ConfigError("config: space bound lengths differ");
    for (std::size_t i = 0; i < lo.size(); ++i) {
      bool per = i < periodic.size() && periodic[i];
      coords.push_back(per ? Coord::periodic() : Coord::bounded(lo[i], hi[i]));
    }
  } else {
    for (std::size_t i = 0; i < periodic.size(); ++i)
      coords.push_back(periodic[i] ? Coord::periodic() : Coord::unbounded());
  }
  if (static_cast<int>(coords.size()) != dim)
    throw ConfigError("config: space dimension does not match the target");
  return SupportSpace(std::move(coords));
}

inline InitSpec parse_init(const nlohmann::json& j, int dim) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("config: 'init' must be an object with a 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    if (j.contains("lower")) {
      auto lo = j.at("lower").get<std::vector<double>>();
      auto hi = j.at("upper").get<std::vector<double>>();
      return InitSpec::uniform(Eigen::Map<Eigen::VectorXd>(lo.data(), lo.size()),
                               Eigen::Map<Eigen::VectorXd>(hi.data(), hi.size()));
    }
    return InitSpec::uniform(j.value("lo", -1.0), j.value("hi", 1.0), dim);
  }
  if (kind == "gaussian") {
    InitSpec s = InitSpec::gaussian(j.value("sigma", 1.0));
    if (j.contains("center")) {
      auto c = j.at("center").get<std::vector<double>>();
      s.center = Eigen::Map<Eigen::VectorXd>(c.data(), c.size());
    }
    return s;
  }
  throw ConfigError("config: unknown init kind '" + kind + "'");
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  static const std::set<std::string> known = {
      "target", "space", "reparam", "n_particles", "iterations", "tau", "seed",
      "precondition", "fisher_stride", "lambda", "anneal", "beta_min",
      "bd", "bd_stride", "max_jump_fraction", "gamma", "c_max", "wrap_truncation",
      "rate_form", "fixed_bandwidth", "init", "diag_stride", "reference_count", "threads"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("config: unknown key '" + it.key() + "'");
  for (const char* req : {"target", "n_particles", "iterations", "tau"})
    if (!j.contains(req))
      throw ConfigError(std::string("config: missing required key '") + req + "'");

  RunConfig cfg;
  try {
    cfg.target = detail::parse_target(j.at("target"));
    cfg.n_particles = j.at("n_particles").get<int>();
    cfg.iterations = j.at("iterations").get<std::uint64_t>();
    cfg.tau = j.at("tau").get<double>();
    cfg.seed = j.value("seed", 0ull);
    if (j.contains("space")) cfg.space = detail::parse_space(j.at("space"), cfg.target->dim());
    if (j.contains("reparam"))
      cfg.family = RandomVariableFamily::parse(j.at("reparam").get<std::string>());
    if (j.contains("precondition")) cfg.precondition = detail::parse_flag(j.at("precondition"), "precondition");
    cfg.fisher_stride = j.value("fisher_stride", 10);
    cfg.lambda = j.value("lambda", 1e-3);
    if (j.contains("anneal")) cfg.anneal = detail::parse_flag(j.at("anneal"), "anneal");
    cfg.beta_min = j.value("beta_min", 1e-5);
    if (j.contains("bd")) cfg.bd = detail::parse_flag(j.at("bd"), "bd");
    cfg.bd_stride = j.value("bd_stride", 1);
    cfg.bd_config.max_jump_fraction = j.value("max_jump_fraction", 0.05);
    if (j.contains("gamma") && !j.at("gamma").is_null())
      cfg.bd_config.gamma = j.at("gamma").get<double>();
    cfg.bd_config.c_max = j.value("c_max", 1.0);
    cfg.bd_config.wrap_truncation = j.value("wrap_truncation", 3);
    if (j.contains("rate_form")) {
      std::string form = j.at("rate_form").get<std::string>();
      if (form == "k_rho_over_p") cfg.bd_config.rate_form = RateForm::KRhoOverP;
      else if (form == "k_rho_times_inv_p") cfg.bd_config.rate_form = RateForm::KRhoTimesInvP;
      else throw ConfigError("config: unknown rate_form '" + form + "'");
    }
    if (j.contains("fixed_bandwidth") && !j.at("fixed_bandwidth").is_null())
      cfg.bd_config.fixed_bandwidth = j.at("fixed_bandwidth").get<double>();
    if (j.contains("init")) cfg.init = detail::parse_init(j.at("init"), cfg.target->dim());
    cfg.diag_stride = j.value("diag_stride", 100);
    cfg.reference_count = j.value("reference_count", 2000);
    cfg.threads = j.value("threads", 1);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return parse_config(j);
}

}  // namespace lbd
