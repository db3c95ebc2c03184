#pragma once

// Constant-time alive-set bookkeeping for the jump process. Two mutually
// inverse permutations over labels 0..N-1:
//   particles_[pos]  = label stored at pos,
//   indices_[label]  = position of label,
// with the alive labels packed into the prefix [0, n_alive_). kill swaps the
// victim with the last alive slot and shrinks the prefix, so membership,
// removal and uniform choice are all O(1) and nothing allocates after
// construction.

#include <cstdint>
#include <numeric>
#include <vector>

#include "lbd/errors.hpp"
#include "lbd/rng.hpp"

namespace lbd {

class ParticleTracker {
 public:
  explicit ParticleTracker(int n) : particles_(checked(n)), indices_(particles_.size()), n_alive_(n) {
    std::iota(particles_.begin(), particles_.end(), 0);
    std::iota(indices_.begin(), indices_.end(), 0);
  }

  int size() const { return static_cast<int>(particles_.size()); }
  int n_alive() const { return n_alive_; }

  bool is_alive(int label) const {
    check_label(label);
    return indices_[label] < n_alive_;
  }

  void kill(int label) {
    check_label(label);
    int pos = indices_[label];
    if (pos >= n_alive_) throw ContractViolation("ParticleTracker::kill: particle already dead");
    int last = n_alive_ - 1;
    int other = particles_[last];
    particles_[pos] = other;
    particles_[last] = label;
    indices_[other] = pos;
    indices_[label] = last;
    --n_alive_;
  }

  /// Uniform draw over the alive set.
  template <class URBG>
  int choose(URBG& rng) const {
    if (n_alive_ == 0) throw ContractViolation("ParticleTracker::choose: no particle alive");
    return particles_[uniform_below(rng, static_cast<std::uint64_t>(n_alive_))];
  }

  /// Alive labels in storage order (the prefix of the position permutation).
  std::vector<int> alive_labels() const {
    return {particles_.begin(), particles_.begin() + n_alive_};
  }

  const std::vector<int>& particles() const { return particles_; }
  const std::vector<int>& indices() const { return indices_; }

 private:
  static std::size_t checked(int n) {
    if (n <= 0) throw ContractViolation("ParticleTracker: need at least one particle");
    return static_cast<std::size_t>(n);
  }

  void check_label(int label) const {
    if (label < 0 || label >= size())
      throw ContractViolation("ParticleTracker: label out of range");
  }

  std::vector<int> particles_, indices_;
  int n_alive_;
};

}  // namespace lbd
