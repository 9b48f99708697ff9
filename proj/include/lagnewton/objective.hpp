#pragma once

#include "lagnewton/prox.hpp"

#include <memory>

namespace lagnewton {

/// Smooth convex part f of the composite objective. Implementations return
/// exact derivatives; the Hessian must be symmetric.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  virtual Index dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual Matrix hessian(const Vector& x) const = 0;
  /// True when the Hessian does not depend on x.
  virtual bool is_quadratic() const { return false; }
};

/// f(x) = 1/2 (x, A x) - (b, x) with A symmetric.
class QuadraticObjective final : public SmoothObjective {
 public:
  /// Rejects A whose asymmetry exceeds 1e-12 relative to its largest entry.
  QuadraticObjective(Matrix a, Vector b);

  Index dim() const override { return b_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  bool is_quadratic() const override { return true; }

  const Matrix& a() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }

 private:
  Matrix a_;
  Vector b_;
};

/// f(x) = mu/2 ||x||^2 + weight * sum_j log(1 + exp(x_j - shift_j)) - (b, x).
///
/// Strongly convex with modulus mu and a Hessian that changes with x, so it
/// exercises the non-quadratic code paths.
class SoftplusObjective final : public SmoothObjective {
 public:
  SoftplusObjective(double mu, double weight, Vector shift, Vector b);

  Index dim() const override { return b_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;

 private:
  double mu_;
  double weight_;
  Vector shift_;
  Vector b_;
};

}  // namespace lagnewton
