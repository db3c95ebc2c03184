#pragma once

// Scalar helpers shared across the library: stable log-sum-exp and the
// standard normal cdf/quantile pair. The quantile goes through the inverse
// complementary error function so both tails keep full relative accuracy
// (better than 1e-12 over the whole open unit interval).

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>
#include <span>

#include "lbd/errors.hpp"

namespace lbd {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double sqrt2 = 1.41421356237309504880;
inline constexpr double log_2pi = 1.83787706640934548356;

/// ln(sum_i exp(v_i)). Empty input yields -inf; -inf entries are ignored.
inline double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v)
    if (x > m) m = x;
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

inline double normal_pdf(double y) { return std::exp(-0.5 * y * y) / std::sqrt(two_pi); }

inline double normal_cdf(double y) { return 0.5 * std::erfc(-y / sqrt2); }

/// Inverse of normal_cdf on (0, 1).
inline double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw ContractViolation("normal_quantile: u must lie in (0,1)");
  // Mirror so the erfc_inv argument stays small in both tails.
  return u <= 0.5 ? -sqrt2 * boost::math::erfc_inv(2.0 * u)
                  : sqrt2 * boost::math::erfc_inv(2.0 * (1.0 - u));
}

}  // namespace lbd
