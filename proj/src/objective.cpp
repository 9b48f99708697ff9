#include "lagnewton/objective.hpp"

#include "lagnewton/errors.hpp"

#include <cmath>
#include <string>

namespace lagnewton {

namespace {

void require_dim(Index expected, const Vector& x) {
  if (x.size() != expected)
    throw DimensionError("objective of dimension " + std::to_string(expected) +
                         " evaluated at vector of length " + std::to_string(x.size()));
}

// log(1 + e^t) without overflow.
double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double logistic(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

QuadraticObjective::QuadraticObjective(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != a_.cols())
    throw DimensionError("quadratic matrix A must be square, got " +
                         describe_shape(a_.rows(), a_.cols()));
  if (a_.rows() != b_.size())
    throw DimensionError("A is " + describe_shape(a_.rows(), a_.cols()) + " but b has length " +
                         std::to_string(b_.size()));
  const double scale = a_.cwiseAbs().maxCoeff();
  const double asym = (a_ - a_.transpose()).cwiseAbs().maxCoeff();
  if (a_.size() > 0 && asym > 1e-12 * scale)
    throw ParameterError("quadratic matrix A is not symmetric (max asymmetry " +
                         std::to_string(asym) + ")");
}

double QuadraticObjective::value(const Vector& x) const {
  require_dim(dim(), x);
  return 0.5 * x.dot(a_ * x) - b_.dot(x);
}

Vector QuadraticObjective::gradient(const Vector& x) const {
  require_dim(dim(), x);
  return a_ * x - b_;
}

Matrix QuadraticObjective::hessian(const Vector& x) const {
  require_dim(dim(), x);
  return a_;
}

SoftplusObjective::SoftplusObjective(double mu, double weight, Vector shift, Vector b)
    : mu_(mu), weight_(weight), shift_(std::move(shift)), b_(std::move(b)) {
  if (!(mu_ > 0.0)) throw ParameterError("softplus objective needs mu > 0");
  if (!(weight_ >= 0.0)) throw ParameterError("softplus objective needs weight >= 0");
  if (shift_.size() != b_.size())
    throw DimensionError("softplus shift and b lengths differ");
}

double SoftplusObjective::value(const Vector& x) const {
  require_dim(dim(), x);
  double s = 0.0;
  for (Index j = 0; j < x.size(); ++j) s += softplus(x[j] - shift_[j]);
  return 0.5 * mu_ * x.squaredNorm() + weight_ * s - b_.dot(x);
}

Vector SoftplusObjective::gradient(const Vector& x) const {
  require_dim(dim(), x);
  Vector g = mu_ * x - b_;
  for (Index j = 0; j < x.size(); ++j) g[j] += weight_ * logistic(x[j] - shift_[j]);
  return g;
}

Matrix SoftplusObjective::hessian(const Vector& x) const {
  require_dim(dim(), x);
  Vector d(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    const double s = logistic(x[j] - shift_[j]);
    d[j] = mu_ + weight_ * s * (1.0 - s);
  }
  return Matrix(d.asDiagonal());
}

}  // namespace lagnewton
