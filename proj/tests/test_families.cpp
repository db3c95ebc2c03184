#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <lbd/families.hpp>

#include "helpers.hpp"

using namespace lbd;

namespace {

const std::vector<RandomVariableFamily> kFamilies = {
    RandomVariableFamily(FamilyKind::Logistic), RandomVariableFamily(FamilyKind::Gaussian),
    RandomVariableFamily(FamilyKind::Cauchy)};

const std::vector<double> kProbGrid = {1e-12, 1e-9,  1e-6,       1e-3,  0.02, 0.25,
                                       0.5,   0.731, 0.98,       0.999, 1.0 - 1e-6,
                                       1.0 - 1e-9,   1.0 - 1e-12};

}  // namespace

TEST_CASE("parse accepts the three family names only", "[families]") {
  CHECK(RandomVariableFamily::parse("logistic").kind() == FamilyKind::Logistic);
  CHECK(RandomVariableFamily::parse("gaussian").kind() == FamilyKind::Gaussian);
  CHECK(RandomVariableFamily::parse("cauchy").kind() == FamilyKind::Cauchy);
  CHECK_THROWS_AS(RandomVariableFamily::parse("normal"), ConfigError);
  CHECK_THROWS_AS(RandomVariableFamily::parse(""), ConfigError);
}

TEST_CASE("cdf and quantile invert each other to 1e-10", "[families]") {
  for (const auto& fam : kFamilies) {
    for (double u : kProbGrid) {
      double y = fam.quantile(u);
      REQUIRE(std::isfinite(y));
      REQUIRE(std::abs(fam.cdf(y) - u) <= 1e-10);
    }
  }
}

TEST_CASE("quantile is strictly increasing and antisymmetric", "[families]") {
  for (const auto& fam : kFamilies) {
    CHECK(fam.quantile(0.5) == Catch::Approx(0.0).epsilon(0).margin(1e-15));
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 1; k < 400; ++k) {
      double u = k / 400.0;
      double y = fam.quantile(u);
      REQUIRE(y > prev);
      prev = y;
      REQUIRE(std::abs(y + fam.quantile(1.0 - u)) <= 1e-10 * (1.0 + std::abs(y)));
    }
  }
}

TEST_CASE("quantile rejects arguments outside the open unit interval", "[families]") {
  for (const auto& fam : kFamilies) {
    CHECK_THROWS_AS(fam.quantile(0.0), ContractViolation);
    CHECK_THROWS_AS(fam.quantile(1.0), ContractViolation);
    CHECK_THROWS_AS(fam.quantile(-0.5), ContractViolation);
    CHECK_THROWS_AS(fam.quantile(1.5), ContractViolation);
    CHECK_THROWS_AS(fam.quantile(std::nan("")), ContractViolation);
  }
}

TEST_CASE("pdf is the derivative of the cdf", "[families]") {
  for (const auto& fam : kFamilies) {
    for (double y : {-3.0, -1.0, -0.3, 0.0, 0.7, 2.5}) {
      double h = 1e-5;
      double fd = (fam.cdf(y + h) - fam.cdf(y - h)) / (2.0 * h);
      REQUIRE(fam.pdf(y) == Catch::Approx(fd).epsilon(0).margin(1e-9));
    }
  }
}

TEST_CASE("penalty equals minus log pdf and its gradient checks out", "[families]") {
  for (const auto& fam : kFamilies) {
    for (double y : {-6.0, -2.0, -0.5, 0.0, 0.1, 1.7, 4.0}) {
      REQUIRE(fam.penalty(y) ==
              Catch::Approx(-std::log(fam.pdf(y))).epsilon(0).margin(1e-12));
      double h = 1e-5;
      double fd = (fam.penalty(y + h) - fam.penalty(y - h)) / (2.0 * h);
      REQUIRE(fam.penalty_grad(y) == Catch::Approx(fd).epsilon(0).margin(1e-9));
    }
  }
}

TEST_CASE("penalty values at the origin are the normalizing constants", "[families]") {
  CHECK(RandomVariableFamily(FamilyKind::Logistic).penalty(0.0) ==
        Catch::Approx(1.3862943611198906).epsilon(0).margin(1e-14));  // 2 ln 2
  CHECK(RandomVariableFamily(FamilyKind::Gaussian).penalty(0.0) ==
        Catch::Approx(0.9189385332046727).epsilon(0).margin(1e-14));  // ln(2 pi)/2
  CHECK(RandomVariableFamily(FamilyKind::Cauchy).penalty(0.0) ==
        Catch::Approx(1.1447298858494002).epsilon(0).margin(1e-14));  // ln pi
}

TEST_CASE("tail behavior: linear, quadratic, logarithmic", "[families]") {
  RandomVariableFamily lo(FamilyKind::Logistic), ga(FamilyKind::Gaussian),
      ca(FamilyKind::Cauchy);
  // logistic wall force saturates at 1
  CHECK(lo.penalty(50.0) == Catch::Approx(50.0).epsilon(0).margin(1e-12));
  CHECK(lo.penalty_grad(50.0) == Catch::Approx(1.0).epsilon(0).margin(1e-12));
  CHECK(lo.penalty_grad(-50.0) == Catch::Approx(-1.0).epsilon(0).margin(1e-12));
  // gaussian force grows linearly
  CHECK(ga.penalty(50.0) == Catch::Approx(0.5 * (std::log(2.0 * pi) + 2500.0)));
  CHECK(ga.penalty_grad(50.0) == 50.0);
  // cauchy force decays like 2/y, penalty grows logarithmically
  for (double y : {2000.0, -1e5, 3e9}) {
    REQUIRE(ca.penalty(y) ==
            Catch::Approx(std::log(pi) + 2.0 * std::log(std::abs(y))).epsilon(0).margin(1e-6));
    REQUIRE(ca.penalty_grad(y) == Catch::Approx(2.0 / y).epsilon(1e-6));
  }
  // the overflow guard branch agrees with the generic formula where they meet
  double yb = 9.9e7;
  CHECK(ca.penalty(yb) ==
        Catch::Approx(std::log(pi) + std::log1p(yb * yb)).epsilon(0).margin(1e-12));
}

TEST_CASE("densities integrate to one", "[families]") {
  for (const auto& fam : kFamilies) {
    double z = testing::integrate_real_line([&](double y) { return fam.pdf(y); }, 1e-12);
    REQUIRE(z == Catch::Approx(1.0).epsilon(0).margin(1e-8));
  }
}

TEST_CASE("cdf hits exact tail limits without drama", "[families]") {
  for (const auto& fam : kFamilies) {
    CHECK(fam.cdf(0.0) == 0.5);
    CHECK(fam.cdf(-1e300) >= 0.0);
    CHECK(fam.cdf(-1e300) <= 1e-12);
    CHECK(fam.cdf(1e300) <= 1.0);
    CHECK(fam.cdf(1e300) >= 1.0 - 1e-12);
  }
}
