#include "lagnewton/problem.hpp"

#include "lagnewton/errors.hpp"

#include <cmath>
#include <string>

namespace lagnewton {

Problem::Problem(std::shared_ptr<const SmoothObjective> smooth, LinearMap e, ProxFunction phi,
                 double c)
    : smooth_(std::move(smooth)), e_(std::move(e)), phi_(std::move(phi)), c_(c) {
  if (!smooth_) throw ParameterError("problem needs a smooth objective");
  if (smooth_->dim() != e_.cols())
    throw DimensionError("objective has dimension " + std::to_string(smooth_->dim()) +
                         " but E is " + describe_shape(e_.rows(), e_.cols()));
  if (auto m = phi_.dim(); m && *m != e_.rows())
    throw DimensionError("phi acts on R^" + std::to_string(*m) + " but E is " +
                         describe_shape(e_.rows(), e_.cols()));
  if (!(c_ > 0.0) || !std::isfinite(c_))
    throw ParameterError("penalty parameter c must be positive and finite");
}

Problem Problem::with_penalty(double c) const { return Problem(smooth_, e_, phi_, c); }

ExtendedReal Problem::objective(const Vector& x) const {
  const ExtendedReal phi_value = eval_phi(phi_, e_.apply(x));
  if (phi_value.is_infinite()) return phi_value;
  return ExtendedReal(smooth_->value(x) + phi_value.value());
}

Vector PrimalDual::stacked() const {
  Vector out(x.size() + lambda.size());
  out << x, lambda;
  return out;
}

void require_consistent(const Problem& p, const PrimalDual& pt) {
  if (pt.x.size() != p.n() || pt.lambda.size() != p.m())
    throw DimensionError("point has (x, lambda) lengths (" + std::to_string(pt.x.size()) + ", " +
                         std::to_string(pt.lambda.size()) + ") but problem has (n, m) = (" +
                         std::to_string(p.n()) + ", " + std::to_string(p.m()) + ")");
}

}  // namespace lagnewton
