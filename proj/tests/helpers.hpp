#pragma once

// Shared oracles for the test suite: adaptive quadrature, finite-difference
// gradients, and a deliberately naive alive-set model to check the O(1)
// particle tracker against.

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace testing {

/// Adaptive Simpson on [a, b] with absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

/// Integral of f over the whole real line via the rational substitution
/// y = s / (1 - s^2), which keeps heavy (Cauchy-like) tails integrable.
double integrate_real_line(const std::function<double(double)>& f, double tol = 1e-10);

/// Central finite-difference gradient with step h.
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, double h = 1e-5);

/// Reference implementation of the alive-set bookkeeping: linear scans over a
/// plain vector of alive labels. Slow and obviously correct.
class NaiveAliveSet {
 public:
  explicit NaiveAliveSet(int n) {
    for (int i = 0; i < n; ++i) alive_.push_back(i);
  }

  bool is_alive(int label) const {
    return std::find(alive_.begin(), alive_.end(), label) != alive_.end();
  }

  void kill(int label) {
    auto it = std::find(alive_.begin(), alive_.end(), label);
    if (it == alive_.end()) throw std::logic_error("naive kill: not alive");
    alive_.erase(it);
  }

  int count() const { return static_cast<int>(alive_.size()); }

  std::vector<int> sorted_alive() const {
    std::vector<int> v = alive_;
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::vector<int> alive_;
};

}  // namespace testing
