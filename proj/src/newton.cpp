#include "lagnewton/newton.hpp"

#include "lagnewton/errors.hpp"
#include "lagnewton/lagrangian.hpp"
#include "lagnewton/oracle.hpp"
#include "lagnewton/symmetric_indefinite.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>
#include <string>

namespace lagnewton {

namespace {

constexpr double kPivotTol = 1e-12;

void require_jacobian(const Problem& p, const JacobianElement& g) {
  if (g.size() != p.m())
    throw DimensionError("Jacobian element has length " + std::to_string(g.size()) +
                         " but E has " + std::to_string(p.m()) + " rows");
}

Vector shifted_point(const Problem& p, const PrimalDual& pt) {
  return p.e().apply(pt.x) + pt.lambda / p.c();
}

// Solves [[H, E_o^T], [E_o, 0]] (x+, lambda_o) = (H x - grad f - E_i^T lambda_i, prox(z)_o)
// and scatters the result.
PrimalDual reduced_saddle_update(const Problem& p, const PrimalDual& pt, const JacobianElement& g,
                                 const Vector& lambda_inactive) {
  const Index n = p.n();
  const Vector z = shifted_point(p, pt);
  const Vector pz = prox(p.phi(), p.c(), z);
  const std::vector<Index> o = g.zero_indices();
  const std::vector<Index> i = g.one_indices();
  const Index k = static_cast<Index>(o.size());

  const Matrix h = p.smooth().hessian(pt.x);
  Vector lambda_full = Vector::Zero(p.m());
  for (std::size_t t = 0; t < i.size(); ++t)
    lambda_full[i[t]] = lambda_inactive[static_cast<Index>(t)];

  Matrix kkt = Matrix::Zero(n + k, n + k);
  kkt.topLeftCorner(n, n) = h;
  const Matrix eo = p.e().rows_dense(o);
  kkt.bottomLeftCorner(k, n) = eo;
  kkt.topRightCorner(n, k) = eo.transpose();

  Vector rhs(n + k);
  rhs.head(n) = h * pt.x - p.smooth().gradient(pt.x) - p.e().apply_transpose(lambda_full);
  for (Index t = 0; t < k; ++t) rhs[n + t] = pz[o[static_cast<std::size_t>(t)]];

  const SymmetricIndefiniteFactorization fact(kkt, kPivotTol);
  if (fact.singular())
    throw SingularSystemError("reduced active-set system is singular (" + std::to_string(k) +
                              " active rows)");
  const Vector sol = fact.solve(rhs);

  PrimalDual next{sol.head(n), lambda_full};
  for (Index t = 0; t < k; ++t) next.lambda[o[static_cast<std::size_t>(t)]] = sol[n + t];
  return next;
}

}  // namespace

Matrix LnaMatrix::assembled() const {
  const Index nn = n(), mm = m();
  Matrix out(nn + mm, nn + mm);
  out.topLeftCorner(nn, nn) = block_xx;
  out.topRightCorner(nn, mm) = block_xl;
  out.bottomLeftCorner(mm, nn) = block_lx;
  out.bottomRightCorner(mm, mm) = block_ll.asDiagonal();
  return out;
}

LnaMatrix assemble_lna(const Problem& p, const PrimalDual& pt, const JacobianElement& g) {
  require_consistent(p, pt);
  require_jacobian(p, g);
  const Vector one_minus_g = Vector::Ones(p.m()) - g.diag;
  LnaMatrix lna;
  lna.block_xx = p.smooth().hessian(pt.x) + p.c() * p.e().weighted_gram(one_minus_g);
  lna.block_lx = one_minus_g.asDiagonal() * p.e().to_dense();
  lna.block_xl = lna.block_lx.transpose();
  lna.block_ll = -g.diag / p.c();
  return lna;
}

double lna_decomposition_error(const Problem& p, const PrimalDual& pt, const JacobianElement& g,
                               const LnaMatrix& lna) {
  require_consistent(p, pt);
  require_jacobian(p, g);
  const Index n = p.n(), m = p.m();
  const double c = p.c();
  const Matrix e = p.e().to_dense();

  Matrix smooth_jac = Matrix::Zero(n + m, n + m);
  smooth_jac.topLeftCorner(n, n) = p.smooth().hessian(pt.x) + c * e.transpose() * e;
  smooth_jac.topRightCorner(n, m) = e.transpose();
  smooth_jac.bottomLeftCorner(m, n) = e;

  Matrix left(n + m, m);
  left.topRows(n) = c * e.transpose();
  left.bottomRows(m) = Matrix::Identity(m, m);
  Matrix right(m, n + m);
  right.leftCols(n) = e;
  right.rightCols(m) = Matrix::Identity(m, m) / c;

  const Matrix split = smooth_jac - left * g.diag.asDiagonal() * right;
  const Matrix full = lna.assembled();
  if (full.rows() != split.rows() || full.cols() != split.cols())
    throw DimensionError("LNA matrix does not match the problem dimensions");
  if (full.size() == 0) return 0.0;
  const double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
  return (full - split).cwiseAbs().maxCoeff() / scale;
}

Vector newton_direction(const LnaMatrix& lna, const Vector& rhs) {
  const Matrix full = lna.assembled();
  if (rhs.size() != full.rows())
    throw DimensionError("Newton right-hand side has length " + std::to_string(rhs.size()) +
                         ", system has size " + std::to_string(full.rows()));
  const SymmetricIndefiniteFactorization fact(full, kPivotTol);
  if (fact.singular()) throw SingularSystemError("linear Newton matrix is singular");
  return fact.solve(rhs);
}

PrimalDual full_step_update(const Problem& p, const PrimalDual& pt, const JacobianElement& g) {
  require_consistent(p, pt);
  require_jacobian(p, g);
  const Index n = p.n(), m = p.m();
  const double c = p.c();
  const Vector z = shifted_point(p, pt);
  const Matrix h = p.smooth().hessian(pt.x);
  const Matrix e = p.e().to_dense();
  const Vector one_minus_g = Vector::Ones(m) - g.diag;

  Matrix sys = Matrix::Zero(n + m, n + m);
  sys.topLeftCorner(n, n) = h;
  sys.topRightCorner(n, m) = e.transpose();
  sys.bottomLeftCorner(m, n) = one_minus_g.asDiagonal() * e;
  sys.bottomRightCorner(m, m) = (-g.diag / c).asDiagonal();

  Vector rhs(n + m);
  rhs.head(n) = h * pt.x - p.smooth().gradient(pt.x);
  rhs.tail(m) = prox(p.phi(), c, z) - g.diag.cwiseProduct(z);

  if (sys.size() == 0) return pt;
  const Eigen::PartialPivLU<Matrix> lu(sys);
  const Vector u = lu.matrixLU().diagonal().cwiseAbs();
  if (!(u.minCoeff() >= kPivotTol * u.maxCoeff()) || u.maxCoeff() == 0.0)
    throw SingularSystemError("full-step Newton system is singular");
  const Vector sol = lu.solve(rhs);
  return {sol.head(n), sol.tail(m)};
}

PrimalDual active_set_step_box(const Problem& p, const PrimalDual& pt, const JacobianElement& g) {
  require_consistent(p, pt);
  require_jacobian(p, g);
  if (p.phi().kind() != ProxKind::BoxIndicator)
    throw PreconditionError("active_set_step_box requires a box indicator");
  const Vector lambda_i = Vector::Zero(static_cast<Index>(g.one_indices().size()));
  return reduced_saddle_update(p, pt, g, lambda_i);
}

PrimalDual active_set_step_l1(const Problem& p, const PrimalDual& pt, const JacobianElement& g) {
  require_consistent(p, pt);
  require_jacobian(p, g);
  if (p.phi().kind() != ProxKind::L1Norm)
    throw PreconditionError("active_set_step_l1 requires an l1 norm");
  const Vector z = shifted_point(p, pt);
  const std::vector<Index> i = g.one_indices();
  Vector lambda_i(static_cast<Index>(i.size()));
  for (std::size_t t = 0; t < i.size(); ++t) {
    const double zj = z[i[t]];
    lambda_i[static_cast<Index>(t)] = p.phi().alpha() * ((zj > 0) - (zj < 0));
  }
  return reduced_saddle_update(p, pt, g, lambda_i);
}

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::Direction:
      return "direction";
    case Formulation::FullStep:
      return "fullstep";
    case Formulation::ActiveSet:
      return "activeset";
  }
  return "unknown";
}

void NewtonConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("NewtonConfig.c must be positive");
  if (!(tol > 0.0)) throw ParameterError("NewtonConfig.tol must be positive");
  if (max_iter < 0) throw ParameterError("NewtonConfig.max_iter must be nonnegative");
  if (!(divergence_factor >= 1.0))
    throw ParameterError("NewtonConfig.divergence_factor must be at least 1");
  if (warm_start_steps < 0) throw ParameterError("NewtonConfig.warm_start_steps must be >= 0");
  if (!(warm_start_c > 0.0) || !std::isfinite(warm_start_c))
    throw ParameterError("NewtonConfig.warm_start_c must be positive");
}

SolveReport solve(const Problem& problem, const PrimalDual& start, const NewtonConfig& cfg) {
  cfg.validate();
  require_consistent(problem, start);
  const Problem p = problem.with_penalty(cfg.c);

  PrimalDual pt = start;
  if (cfg.warm_start_steps > 0) {
    OracleConfig warm;
    warm.max_iter = cfg.warm_start_steps;
    warm.tol = cfg.tol;
    warm.c = cfg.warm_start_c;
    pt = alm_first_order(p, pt, warm).final_point();
  }

  SolveReport report;
  report.iterates.push_back(pt);
  double norm = residual_norm(p, pt);
  report.residual_norms.push_back(norm);
  const double initial = norm;

  while (true) {
    if (norm <= cfg.tol) {
      report.status = SolveStatus::Converged;
      break;
    }
    if (!std::isfinite(norm) || norm > cfg.divergence_factor * std::max(initial, cfg.tol)) {
      report.status = SolveStatus::Diverged;
      break;
    }
    if (report.iterations >= cfg.max_iter) {
      report.status = SolveStatus::MaxIterations;
      break;
    }

    const Vector z = shifted_point(p, pt);
    const JacobianElement g = jacobian_element(p.phi(), p.c(), z, cfg.tie_rule);
    report.active_set_history.push_back(g.zero_indices());

    try {
      switch (cfg.formulation) {
        case Formulation::Direction: {
          const Vector d = newton_direction(assemble_lna(p, pt, g), -residual(p, pt));
          pt.x += d.head(p.n());
          pt.lambda += d.tail(p.m());
          break;
        }
        case Formulation::FullStep:
          pt = full_step_update(p, pt, g);
          break;
        case Formulation::ActiveSet:
          pt = p.phi().kind() == ProxKind::BoxIndicator ? active_set_step_box(p, pt, g)
                                                        : active_set_step_l1(p, pt, g);
          break;
      }
    } catch (const SingularSystemError& err) {
      report.status = SolveStatus::SingularSystem;
      report.message = err.what();
      break;
    }

    ++report.iterations;
    const double next = residual_norm(p, pt);
    report.ratios.push_back(next / norm);
    report.residual_norms.push_back(next);
    report.iterates.push_back(pt);
    norm = next;
  }
  return report;
}

NonsingularityDiagnostics check_nonsingularity_conditions(const Problem& p, const PrimalDual& pt) {
  require_consistent(p, pt);
  NonsingularityDiagnostics diag;
  const Matrix h = p.smooth().hessian(pt.x);
  if (h.size() > 0) {
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
    diag.min_hessian_eigenvalue = eig.eigenvalues().minCoeff();
    const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
    diag.hessian_positive_definite = diag.min_hessian_eigenvalue > 1e-12 * scale;
  }
  diag.e_rows = p.m();
  if (p.m() > 0 && p.n() > 0) {
    const Eigen::ColPivHouseholderQR<Matrix> qr(p.e().to_dense());
    diag.e_rank = qr.rank();
  }
  diag.e_surjective = diag.e_rank == p.m();
  diag.hypotheses_hold = diag.hessian_positive_definite && diag.e_surjective;
  return diag;
}

}  // namespace lagnewton
