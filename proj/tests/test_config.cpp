// JSON configuration parsing: defaults, required keys, typo rejection, and
// the translation of every section into the run configuration it names.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "lbd/config.hpp"

using namespace lbd;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

json minimal() {
  return json{{"target", {{"kind", "gaussian"}, {"dim", 2}}},
              {"n_particles", 50},
              {"iterations", 100},
              {"tau", 0.1}};
}

}  // namespace

TEST_CASE("a minimal configuration parses and fills in the defaults", "[config]") {
  RunConfig cfg = parse_config(minimal());
  CHECK(cfg.target->dim() == 2);
  CHECK(cfg.n_particles == 50);
  CHECK(cfg.iterations == 100u);
  CHECK(cfg.tau == 0.1);
  CHECK(cfg.seed == 0u);
  CHECK_FALSE(cfg.space.has_value());
  CHECK(cfg.family.kind() == FamilyKind::Logistic);
  CHECK(cfg.precondition);
  CHECK(cfg.fisher_stride == 10);
  CHECK(cfg.lambda == 1e-3);
  CHECK_FALSE(cfg.anneal);
  CHECK(cfg.beta_min == 1e-5);
  CHECK_FALSE(cfg.bd);
  CHECK(cfg.bd_stride == 1);
  CHECK(cfg.bd_config.max_jump_fraction == 0.05);
  CHECK_FALSE(cfg.bd_config.gamma.has_value());
  CHECK(cfg.bd_config.c_max == 1.0);
  CHECK(cfg.bd_config.wrap_truncation == 3);
  CHECK(cfg.bd_config.rate_form == RateForm::KRhoOverP);
  CHECK_FALSE(cfg.bd_config.fixed_bandwidth.has_value());
  CHECK(cfg.init.kind == InitSpec::Kind::GaussianCloud);
  CHECK(cfg.diag_stride == 100);
  CHECK(cfg.reference_count == 2000);
  CHECK(cfg.threads == 1);
  REQUIRE_NOTHROW(validate(cfg));
}

TEST_CASE("missing required keys are named", "[config]") {
  for (const char* key : {"target", "n_particles", "iterations", "tau"}) {
    json j = minimal();
    j.erase(key);
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring(key));
  }
  CHECK_THROWS_WITH(parse_config(json::array()), ContainsSubstring("object"));
}

TEST_CASE("unknown keys are rejected instead of silently ignored", "[config]") {
  json j = minimal();
  j["step_size"] = 0.1;  // plausible typo for tau
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("step_size"));
}

TEST_CASE("flags accept booleans and on/off strings", "[config]") {
  json j = minimal();
  j["precondition"] = false;
  j["anneal"] = "on";
  j["bd"] = "off";
  RunConfig cfg = parse_config(j);
  CHECK_FALSE(cfg.precondition);
  CHECK(cfg.anneal);
  CHECK_FALSE(cfg.bd);

  j["anneal"] = "yes";
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("anneal"));
}

TEST_CASE("target section builds the named potential", "[config]") {
  SECTION("hybrid rosenbrock defaults to the ten dimensional benchmark") {
    json j = minimal();
    j["target"] = {{"kind", "hybrid_rosenbrock"}};
    CHECK(parse_config(j).target->dim() == 10);
    j["target"] = {{"kind", "hybrid_rosenbrock"}, {"n1", 3}, {"n2", 2}};
    CHECK(parse_config(j).target->dim() == 5);
    j["target"] = {{"kind", "hybrid_rosenbrock"}, {"n1", 1}};
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("n1"));
  }
  SECTION("two ring width flows through to the density") {
    json j = minimal();
    j["target"] = {{"kind", "two_ring"}};
    RunConfig narrow = parse_config(j);
    j["target"] = {{"kind", "two_ring"}, {"sigma", 1.5}};
    RunConfig wide = parse_config(j);
    CHECK(narrow.target->dim() == 2);
    Eigen::Vector2d probe(0.1, 0.2);
    CHECK(narrow.target->value(probe) != wide.target->value(probe));
  }
  SECTION("gaussian requires its dimension") {
    json j = minimal();
    j["target"] = {{"kind", "gaussian"}};
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("dim"));
  }
  SECTION("unknown kinds are reported by name") {
    json j = minimal();
    j["target"] = {{"kind", "banana"}};
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("banana"));
    j["target"] = "gaussian";
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
}

TEST_CASE("reparam picks the coordinate family", "[config]") {
  json j = minimal();
  j["reparam"] = "gaussian";
  CHECK(parse_config(j).family.kind() == FamilyKind::Gaussian);
  j["reparam"] = "cauchy";
  CHECK(parse_config(j).family.kind() == FamilyKind::Cauchy);
  j["reparam"] = "triangular";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("space section overrides the target support", "[config]") {
  json j = minimal();
  SECTION("the unbounded shorthand") {
    j["space"] = "unbounded";
    RunConfig cfg = parse_config(j);
    REQUIRE(cfg.space.has_value());
    CHECK(cfg.space->kind(0) == CoordKind::Unbounded);
    CHECK(cfg.space->kind(1) == CoordKind::Unbounded);
  }
  SECTION("boxes from bound arrays, with optional periodic marks") {
    j["space"] = {{"lower", {-1.0, 0.0}}, {"upper", {1.0, 5.0}}};
    RunConfig cfg = parse_config(j);
    REQUIRE(cfg.space.has_value());
    CHECK(cfg.space->kind(0) == CoordKind::Bounded);
    CHECK(cfg.space->coord(1).lower == 0.0);
    CHECK(cfg.space->coord(1).upper == 5.0);

    j["space"] = {{"lower", {-1.0, 0.0}}, {"upper", {1.0, 5.0}}, {"periodic", {true, false}}};
    cfg = parse_config(j);
    CHECK(cfg.space->kind(0) == CoordKind::Periodic);
    CHECK(cfg.space->kind(1) == CoordKind::Bounded);
  }
  SECTION("periodic marks alone make a torus cross a line") {
    j["space"] = {{"periodic", {true, false}}};
    RunConfig cfg = parse_config(j);
    CHECK(cfg.space->kind(0) == CoordKind::Periodic);
    CHECK(cfg.space->kind(1) == CoordKind::Unbounded);
  }
  SECTION("mismatches are rejected") {
    j["space"] = {{"lower", {-1.0}}, {"upper", {1.0}}};
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("dimension"));
    j["space"] = {{"lower", {-1.0, 0.0}}, {"upper", {1.0}}};
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("lengths"));
    j["space"] = {{"lower", {-1.0, 0.0}}};
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("upper"));
  }
}

TEST_CASE("birth death knobs flow through", "[config]") {
  json j = minimal();
  j["bd"] = true;
  j["bd_stride"] = 5;
  j["max_jump_fraction"] = 0.02;
  j["gamma"] = 0.25;
  j["c_max"] = 3.0;
  j["wrap_truncation"] = 7;
  j["rate_form"] = "k_rho_times_inv_p";
  j["fixed_bandwidth"] = 0.4;
  RunConfig cfg = parse_config(j);
  CHECK(cfg.bd);
  CHECK(cfg.bd_stride == 5);
  CHECK(cfg.bd_config.max_jump_fraction == 0.02);
  REQUIRE(cfg.bd_config.gamma.has_value());
  CHECK(*cfg.bd_config.gamma == 0.25);
  CHECK(cfg.bd_config.c_max == 3.0);
  CHECK(cfg.bd_config.wrap_truncation == 7);
  CHECK(cfg.bd_config.rate_form == RateForm::KRhoTimesInvP);
  REQUIRE(cfg.bd_config.fixed_bandwidth.has_value());
  CHECK(*cfg.bd_config.fixed_bandwidth == 0.4);

  j["gamma"] = nullptr;
  j["fixed_bandwidth"] = nullptr;
  cfg = parse_config(j);
  CHECK_FALSE(cfg.bd_config.gamma.has_value());
  CHECK_FALSE(cfg.bd_config.fixed_bandwidth.has_value());

  j["rate_form"] = "ratio";
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("ratio"));
}

TEST_CASE("init section selects the starting cloud", "[config]") {
  json j = minimal();
  j["init"] = {{"kind", "uniform"}, {"lo", -2.0}, {"hi", 2.0}};
  RunConfig cfg = parse_config(j);
  CHECK(cfg.init.kind == InitSpec::Kind::UniformBox);
  CHECK(cfg.init.lower == Eigen::Vector2d(-2.0, -2.0));
  CHECK(cfg.init.upper == Eigen::Vector2d(2.0, 2.0));

  j["init"] = {{"kind", "uniform"}, {"lower", {0.0, 1.0}}, {"upper", {1.0, 2.0}}};
  cfg = parse_config(j);
  CHECK(cfg.init.lower == Eigen::Vector2d(0.0, 1.0));
  CHECK(cfg.init.upper == Eigen::Vector2d(1.0, 2.0));

  j["init"] = {{"kind", "gaussian"}, {"sigma", 0.3}, {"center", {4.0, -4.0}}};
  cfg = parse_config(j);
  CHECK(cfg.init.kind == InitSpec::Kind::GaussianCloud);
  CHECK(cfg.init.sigma == 0.3);
  CHECK(cfg.init.center == Eigen::Vector2d(4.0, -4.0));

  j["init"] = {{"kind", "lattice"}};
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("lattice"));
}

TEST_CASE("type mismatches surface as configuration errors", "[config]") {
  json j = minimal();
  j["tau"] = "0.1";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = minimal();
  j["n_particles"] = {{"count", 3}};
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("files load with comments allowed and bad paths named", "[config]") {
  std::string path = "config_under_test.json";
  {
    std::ofstream out(path);
    out << "{\n"
        << "  // smallest useful run\n"
        << "  \"target\": {\"kind\": \"gaussian\", \"dim\": 2},\n"
        << "  \"n_particles\": 50, \"iterations\": 100, \"tau\": 0.1\n"
        << "}\n";
  }
  RunConfig cfg = load_config(path);
  CHECK(cfg.n_particles == 50);
  std::remove(path.c_str());

  CHECK_THROWS_WITH(load_config("no_such_file.json"), ContainsSubstring("no_such_file"));

  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::remove(path.c_str());
}
