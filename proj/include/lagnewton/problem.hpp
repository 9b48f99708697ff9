#pragma once

#include "lagnewton/linear_map.hpp"
#include "lagnewton/objective.hpp"
#include "lagnewton/prox.hpp"

#include <memory>

namespace lagnewton {

/// min_x f(x) + phi(E x), together with the penalty c of the augmented
/// Lagrangian L_c. Construction validates every dimension.
class Problem {
 public:
  Problem(std::shared_ptr<const SmoothObjective> smooth, LinearMap e, ProxFunction phi, double c);

  const SmoothObjective& smooth() const noexcept { return *smooth_; }
  const std::shared_ptr<const SmoothObjective>& smooth_ptr() const noexcept { return smooth_; }
  const LinearMap& e() const noexcept { return e_; }
  const ProxFunction& phi() const noexcept { return phi_; }
  double c() const noexcept { return c_; }

  Index n() const noexcept { return e_.cols(); }
  Index m() const noexcept { return e_.rows(); }

  /// Same data, different penalty.
  Problem with_penalty(double c) const;

  /// f(x) + phi(E x); +infinity outside the domain.
  ExtendedReal objective(const Vector& x) const;

 private:
  std::shared_ptr<const SmoothObjective> smooth_;
  LinearMap e_;
  ProxFunction phi_;
  double c_;
};

/// A point (x, lambda) of the primal-dual space R^n x R^m.
struct PrimalDual {
  Vector x;
  Vector lambda;

  static PrimalDual zeros(const Problem& p) {
    return {Vector::Zero(p.n()), Vector::Zero(p.m())};
  }
  /// Stacked (x, lambda).
  Vector stacked() const;
};

void require_consistent(const Problem& p, const PrimalDual& pt);

}  // namespace lagnewton
