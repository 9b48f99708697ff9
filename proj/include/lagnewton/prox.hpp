#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace lagnewton {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ProxKind { BoxIndicator, L1Norm };

/// Selection rule for the diagonal of a limiting Jacobian at a kink, where
/// both 0 and 1 are admissible.
enum class TieRule { PreferZero, PreferOne };

/// A real number or +infinity. Indicator functions take the latter value
/// outside their domain.
class ExtendedReal {
 public:
  explicit ExtendedReal(double value) : value_(value), infinite_(false) {}
  static ExtendedReal infinity() { return ExtendedReal(); }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  /// Throws std::logic_error when infinite.
  double value() const;

 private:
  ExtendedReal() : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

/// A separable closed convex function phi on R^m with a closed-form prox.
///
/// Immutable after construction. The box indicator carries its dimension;
/// the l1 norm applies to vectors of any length.
class ProxFunction {
 public:
  /// Indicator of {z : lower <= z <= upper}. Bounds may be infinite.
  static ProxFunction box(Vector lower, Vector upper);
  /// alpha * ||z||_1 with alpha > 0.
  static ProxFunction l1(double alpha);

  ProxKind kind() const noexcept { return kind_; }
  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }
  double alpha() const noexcept { return alpha_; }

  /// Dimension fixed by the function, if any.
  std::optional<Index> dim() const;

 private:
  ProxFunction(ProxKind kind, Vector lower, Vector upper, double alpha)
      : kind_(kind), lower_(std::move(lower)), upper_(std::move(upper)), alpha_(alpha) {}

  ProxKind kind_;
  Vector lower_;
  Vector upper_;
  double alpha_;
};

/// Diagonal of an element G of the limiting Jacobian of prox_{phi/c} at z.
/// Entries are exactly 0 or 1.
struct JacobianElement {
  Vector diag;

  Index size() const { return diag.size(); }
  /// Indices j with G_jj = 0.
  std::vector<Index> zero_indices() const;
  /// Indices j with G_jj = 1.
  std::vector<Index> one_indices() const;
};

ExtendedReal eval_phi(const ProxFunction& phi, const Vector& z);

/// prox_{phi/c}(z) = argmin_u phi(u) + (c/2)||u - z||^2.
Vector prox(const ProxFunction& phi, double c, const Vector& z);

/// Moreau envelope phi_c(z) = phi(prox(z)) + (c/2)||prox(z) - z||^2.
double moreau(const ProxFunction& phi, double c, const Vector& z);

/// Gradient of the envelope, c (z - prox_{phi/c}(z)).
Vector moreau_grad(const ProxFunction& phi, double c, const Vector& z);

/// prox_{c phi*}(c z), obtained from the Moreau decomposition
/// prox_{phi/c}(z) + (1/c) prox_{c phi*}(c z) = z.
Vector prox_conjugate(const ProxFunction& phi, double c, const Vector& z);

JacobianElement jacobian_element(const ProxFunction& phi, double c, const Vector& z,
                                 TieRule tie_rule = TieRule::PreferZero);

}  // namespace lagnewton
