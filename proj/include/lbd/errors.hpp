#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lbd {

/// Caller broke a documented precondition (bad bounds, out-of-support point, ...).
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A run configuration is unusable. Messages name the offending key or value.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The dynamics produced a non-finite coordinate. Carries enough context to
/// point at the failing step.
struct DivergenceError : std::runtime_error {
  DivergenceError(std::uint64_t iteration_, std::int64_t particle_, const std::string& what_)
      : std::runtime_error(what_), iteration(iteration_), particle(particle_) {}
  std::uint64_t iteration;
  std::int64_t particle;
};

/// All pairwise distances collapsed to zero; the median heuristic has no scale.
struct DegenerateBandwidthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lbd
