#include "lagnewton/prox.hpp"

#include "lagnewton/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lagnewton {

namespace {

void require_penalty(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw ParameterError("penalty parameter c must be positive and finite, got " +
                         std::to_string(c));
}

void require_length(const ProxFunction& phi, const Vector& z) {
  if (auto m = phi.dim(); m && *m != z.size())
    throw DimensionError("box of dimension " + std::to_string(*m) +
                         " applied to vector of length " + std::to_string(z.size()));
}

double soft_threshold(double s, double t) { return std::max(s - t, std::min(s + t, 0.0)); }

double select(bool one, bool zero, TieRule tie) {
  if (one) return 1.0;
  if (zero) return 0.0;
  return tie == TieRule::PreferOne ? 1.0 : 0.0;
}

}  // namespace

double ExtendedReal::value() const {
  if (infinite_) throw std::logic_error("ExtendedReal::value() called on +infinity");
  return value_;
}

ProxFunction ProxFunction::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size())
    throw DimensionError("box bounds have lengths " + std::to_string(lower.size()) + " and " +
                         std::to_string(upper.size()));
  for (Index j = 0; j < lower.size(); ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]))
      throw ParameterError("box bound " + std::to_string(j) + " is NaN");
    if (lower[j] > upper[j] || lower[j] == INFINITY || upper[j] == -INFINITY)
      throw ParameterError("box is empty in coordinate " + std::to_string(j));
  }
  return ProxFunction(ProxKind::BoxIndicator, std::move(lower), std::move(upper), 0.0);
}

ProxFunction ProxFunction::l1(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError("l1 weight alpha must be positive and finite");
  return ProxFunction(ProxKind::L1Norm, Vector(), Vector(), alpha);
}

std::optional<Index> ProxFunction::dim() const {
  if (kind_ == ProxKind::BoxIndicator) return lower_.size();
  return std::nullopt;
}

std::vector<Index> JacobianElement::zero_indices() const {
  std::vector<Index> out;
  for (Index j = 0; j < diag.size(); ++j)
    if (diag[j] == 0.0) out.push_back(j);
  return out;
}

std::vector<Index> JacobianElement::one_indices() const {
  std::vector<Index> out;
  for (Index j = 0; j < diag.size(); ++j)
    if (diag[j] != 0.0) out.push_back(j);
  return out;
}

ExtendedReal eval_phi(const ProxFunction& phi, const Vector& z) {
  require_length(phi, z);
  switch (phi.kind()) {
    case ProxKind::BoxIndicator:
      for (Index j = 0; j < z.size(); ++j)
        if (!(z[j] >= phi.lower()[j] && z[j] <= phi.upper()[j])) return ExtendedReal::infinity();
      return ExtendedReal(0.0);
    case ProxKind::L1Norm:
      return ExtendedReal(phi.alpha() * z.lpNorm<1>());
  }
  throw std::logic_error("unknown ProxKind");
}

Vector prox(const ProxFunction& phi, double c, const Vector& z) {
  require_penalty(c);
  require_length(phi, z);
  switch (phi.kind()) {
    case ProxKind::BoxIndicator:
      return z.cwiseMin(phi.upper()).cwiseMax(phi.lower());
    case ProxKind::L1Norm: {
      const double t = phi.alpha() / c;
      return z.unaryExpr([t](double s) { return soft_threshold(s, t); });
    }
  }
  throw std::logic_error("unknown ProxKind");
}

double moreau(const ProxFunction& phi, double c, const Vector& z) {
  const Vector p = prox(phi, c, z);
  // prox(z) always lies in dom(phi), so this is finite.
  return eval_phi(phi, p).value() + 0.5 * c * (p - z).squaredNorm();
}

Vector moreau_grad(const ProxFunction& phi, double c, const Vector& z) {
  return c * (z - prox(phi, c, z));
}

Vector prox_conjugate(const ProxFunction& phi, double c, const Vector& z) {
  return c * (z - prox(phi, c, z));
}

JacobianElement jacobian_element(const ProxFunction& phi, double c, const Vector& z,
                                 TieRule tie_rule) {
  require_penalty(c);
  require_length(phi, z);
  JacobianElement g{Vector(z.size())};
  switch (phi.kind()) {
    case ProxKind::BoxIndicator:
      for (Index j = 0; j < z.size(); ++j) {
        const double lo = phi.lower()[j];
        const double hi = phi.upper()[j];
        g.diag[j] = select(lo < z[j] && z[j] < hi, z[j] < lo || z[j] > hi, tie_rule);
      }
      break;
    case ProxKind::L1Norm: {
      const double t = phi.alpha() / c;
      for (Index j = 0; j < z.size(); ++j) {
        const double a = std::abs(z[j]);
        g.diag[j] = select(a > t, a < t, tie_rule);
      }
      break;
    }
  }
  return g;
}

}  // namespace lagnewton
