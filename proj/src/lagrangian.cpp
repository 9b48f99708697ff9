#include "lagnewton/lagrangian.hpp"

namespace lagnewton {

namespace {

Vector shifted_point(const Problem& p, const PrimalDual& pt) {
  require_consistent(p, pt);
  return p.e().apply(pt.x) + pt.lambda / p.c();
}

}  // namespace

double eval_Lc(const Problem& p, const PrimalDual& pt) {
  const Vector z = shifted_point(p, pt);
  return p.smooth().value(pt.x) + moreau(p.phi(), p.c(), z) -
         pt.lambda.squaredNorm() / (2.0 * p.c());
}

Vector grad_x_Lc(const Problem& p, const PrimalDual& pt) {
  const Vector z = shifted_point(p, pt);
  const Vector gap = z - prox(p.phi(), p.c(), z);
  return p.smooth().gradient(pt.x) + p.c() * p.e().apply_transpose(gap);
}

Vector grad_lambda_Lc(const Problem& p, const PrimalDual& pt) {
  const Vector z = shifted_point(p, pt);
  return p.e().apply(pt.x) - prox(p.phi(), p.c(), z);
}

Vector residual(const Problem& p, const PrimalDual& pt) {
  const Vector z = shifted_point(p, pt);
  const Vector pz = prox(p.phi(), p.c(), z);
  Vector out(p.n() + p.m());
  out.head(p.n()) = p.smooth().gradient(pt.x) + p.c() * p.e().apply_transpose(z - pz);
  out.tail(p.m()) = p.e().apply(pt.x) - pz;
  return out;
}

double residual_norm(const Problem& p, const PrimalDual& pt) {
  const Vector r = residual(p, pt);
  return r.size() == 0 ? 0.0 : r.lpNorm<Eigen::Infinity>();
}

double check_identity_Lx(const Problem& p, const PrimalDual& pt) {
  const Vector lhs = grad_x_Lc(p, pt);
  const Vector rhs = p.smooth().gradient(pt.x) +
                     p.e().apply_transpose(pt.lambda + p.c() * grad_lambda_Lc(p, pt));
  return (lhs - rhs).norm();
}

KktResiduals check_optimality_kkt3(const Problem& p, const PrimalDual& pt) {
  require_consistent(p, pt);
  const Vector ex = p.e().apply(pt.x);
  const Vector station = p.smooth().gradient(pt.x) + p.e().apply_transpose(pt.lambda);
  const Vector feas = ex - prox(p.phi(), p.c(), ex + pt.lambda / p.c());
  return {station.size() ? station.lpNorm<Eigen::Infinity>() : 0.0,
          feas.size() ? feas.lpNorm<Eigen::Infinity>() : 0.0};
}

Vector psi_c_grad(const Problem& p, const PrimalDual& pt) {
  return pt.lambda + p.c() * grad_lambda_Lc(p, pt);
}

}  // namespace lagnewton
