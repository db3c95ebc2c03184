#pragma once

// Reference random variables on the real line. Each family supplies the cdf F,
// pdf f, quantile q = F^{-1}, the tail penalty U(y) = -ln f(y) and its
// derivative. The penalty is what replaces a hard wall once a bounded
// coordinate is mapped to the line: logistic walls pull back with constant
// force, Gaussian ones harmonically, Cauchy ones with a force that decays like
// 2/y.

#include <cmath>
#include <string>
#include <string_view>

#include "lbd/errors.hpp"
#include "lbd/math.hpp"

namespace lbd {

enum class FamilyKind { Logistic, Gaussian, Cauchy };

class RandomVariableFamily {
 public:
  explicit RandomVariableFamily(FamilyKind k) : kind_(k) {}

  static RandomVariableFamily parse(std::string_view name) {
    if (name == "logistic") return RandomVariableFamily(FamilyKind::Logistic);
    if (name == "gaussian") return RandomVariableFamily(FamilyKind::Gaussian);
    if (name == "cauchy") return RandomVariableFamily(FamilyKind::Cauchy);
    throw ConfigError("reparam: unknown family '" + std::string(name) +
                      "' (expected logistic, gaussian or cauchy)");
  }

  FamilyKind kind() const { return kind_; }

  const char* name() const {
    switch (kind_) {
      case FamilyKind::Logistic: return "logistic";
      case FamilyKind::Gaussian: return "gaussian";
      case FamilyKind::Cauchy: return "cauchy";
    }
    return "?";
  }

  double cdf(double y) const {
    switch (kind_) {
      case FamilyKind::Logistic:
        return y >= 0.0 ? 1.0 / (1.0 + std::exp(-y)) : std::exp(y) / (1.0 + std::exp(y));
      case FamilyKind::Gaussian:
        return normal_cdf(y);
      case FamilyKind::Cauchy:
        // atan(1/|y|) form keeps full accuracy in the tails.
        if (y < 0.0) return std::atan(-1.0 / y) / pi;
        if (y > 0.0) return 1.0 - std::atan(1.0 / y) / pi;
        return 0.5;
    }
    return 0.0;
  }

  double pdf(double y) const {
    switch (kind_) {
      case FamilyKind::Logistic: {
        double e = std::exp(-std::abs(y));  // pdf is even
        double d = 1.0 + e;
        return e / (d * d);
      }
      case FamilyKind::Gaussian:
        return normal_pdf(y);
      case FamilyKind::Cauchy:
        return 1.0 / (pi * (1.0 + y * y));
    }
    return 0.0;
  }

  /// q(u) for u in (0, 1); throws outside. |F(q(u)) - u| stays below 1e-10
  /// over the whole interval.
  double quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
      throw ContractViolation("RandomVariableFamily::quantile: u must lie in (0,1)");
    switch (kind_) {
      case FamilyKind::Logistic:
        return std::log(u) - std::log1p(-u);
      case FamilyKind::Gaussian:
        return normal_quantile(u);
      case FamilyKind::Cauchy:
        // tan(pi*(u - 1/2)) = -cot(pi*u); mirroring keeps the argument small.
        if (u > 0.5) return cot_form(1.0 - u);
        if (u < 0.5) return -cot_form(u);
        return 0.0;
    }
    return 0.0;
  }

  /// U(y) = -ln f(y).
  double penalty(double y) const {
    switch (kind_) {
      case FamilyKind::Logistic:
        return std::abs(y) + 2.0 * std::log1p(std::exp(-std::abs(y)));
      case FamilyKind::Gaussian:
        return 0.5 * (log_2pi + y * y);
      case FamilyKind::Cauchy: {
        double a = std::abs(y);
        if (a > 1e8) return std::log(pi) + 2.0 * std::log(a);  // avoids y*y overflow
        return std::log(pi) + std::log1p(y * y);
      }
    }
    return 0.0;
  }

  /// U'(y); the confining force toward the origin of the line.
  double penalty_grad(double y) const {
    switch (kind_) {
      case FamilyKind::Logistic:
        return std::tanh(0.5 * y);  // equals 2F(y) - 1
      case FamilyKind::Gaussian:
        return y;
      case FamilyKind::Cauchy:
        if (std::abs(y) > 1e8) return 2.0 / y;
        return 2.0 * y / (1.0 + y * y);
    }
    return 0.0;
  }

 private:
  static double cot_form(double u) {
    // -q(u) for u < 1/2: cos(pi*u)/sin(pi*u); sin(pi*u) ~ pi*u is exact where
    // it matters, so tiny u comes out near 1/(pi*u) with full precision.
    return std::cos(pi * u) / std::sin(pi * u);
  }

  FamilyKind kind_;
};

}  // namespace lbd
