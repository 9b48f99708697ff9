#include "lagnewton/oracle.hpp"

#include "lagnewton/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lagnewton {

namespace {

double inf_norm(const Vector& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

double kkt_residual(const Problem& p, const Vector& x, const Vector& lambda) {
  const Vector ex = p.e().apply(x);
  const double station = inf_norm(p.smooth().gradient(x) + p.e().apply_transpose(lambda));
  const double feas = inf_norm(ex - prox(p.phi(), p.c(), ex + lambda / p.c()));
  return std::max(station, feas);
}

// argmin_x f(x) + (c/2)||E x - w||^2 for non-quadratic f, started at x.
Vector damped_newton_subproblem(const Problem& p, Vector x, const Vector& w, const Matrix& ete, double c) {
  auto merit = [&](const Vector& y) {
    return p.smooth().value(y) + 0.5 * c * (p.e().apply(y) - w).squaredNorm();
  };
  double fx = merit(x);
  for (int it = 0; it < 100; ++it) {
    const Vector g = p.smooth().gradient(x) + c * p.e().apply_transpose(p.e().apply(x) - w);
    if (inf_norm(g) <= 1e-14 * (1.0 + std::abs(fx))) break;
    const Eigen::LLT<Matrix> llt(p.smooth().hessian(x) + c * ete);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("oracle subproblem Hessian is not positive definite");
    const Vector d = -llt.solve(g);
    double t = 1.0;
    const double slope = g.dot(d);
    Vector trial = x + d;
    double ft = merit(trial);
    // Once the Newton decrement is at round-off level the merit can no longer
    // certify decrease; the full step is then taken as is.
    const bool local = -slope <= 1e-10 * (1.0 + std::abs(fx));
    while (!local && ft > fx + 1e-4 * t * slope && t > 1e-12) {
      t *= 0.5;
      trial = x + t * d;
      ft = merit(trial);
    }
    const bool stalled = (trial - x).lpNorm<Eigen::Infinity>() <= 1e-16 * (1.0 + inf_norm(x));
    x = std::move(trial);
    fx = ft;
    if (stalled) break;
  }
  return x;
}

bool unconstrained(const ProxFunction& phi) {
  return phi.kind() == ProxKind::BoxIndicator && phi.lower().array().isInf().all() &&
         phi.upper().array().isInf().all();
}

struct GoldenBracket {
  double lo;
  double hi;
};

}  // namespace

void OracleConfig::validate() const {
  if (max_iter < 0) throw ParameterError("OracleConfig.max_iter must be >= 0");
  if (!(tol > 0.0)) throw ParameterError("OracleConfig.tol must be positive");
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("OracleConfig.c must be positive");
}

SolveReport alm_first_order(const Problem& problem, const PrimalDual& start,
                            const OracleConfig& cfg) {
  cfg.validate();
  require_consistent(problem, start);
  const Problem p = problem.with_penalty(cfg.c);
  const double c = cfg.c;
  const Matrix ete = p.e().weighted_gram(Vector::Ones(p.m()));

  Eigen::LLT<Matrix> quadratic_solver;
  const bool quadratic = p.smooth().is_quadratic();
  Vector linear_term;  // b in f = 1/2 x'Ax - b'x, recovered as -grad f(0)
  if (quadratic) {
    quadratic_solver.compute(p.smooth().hessian(Vector::Zero(p.n())) + c * ete);
    if (quadratic_solver.info() != Eigen::Success)
      throw std::runtime_error("oracle system A + c E^T E is not positive definite");
    linear_term = -p.smooth().gradient(Vector::Zero(p.n()));
  }

  SolveReport report;
  report.iterates.push_back(start);
  report.residual_norms.push_back(kkt_residual(p, start.x, start.lambda));

  // phi = 0: lambda = 0 and a single minimization of f.
  if (unconstrained(p.phi())) {
    const Vector x = quadratic ? Vector(Eigen::LLT<Matrix>(p.smooth().hessian(start.x)).solve(linear_term))
                               : damped_newton_subproblem(p, start.x, Vector::Zero(p.m()), ete, 0.0);
    const Vector lambda = Vector::Zero(p.m());
    report.iterations = 1;
    report.residual_norms.push_back(kkt_residual(p, x, lambda));
    report.ratios.push_back(report.residual_norms[1] / report.residual_norms[0]);
    report.status = report.residual_norms[1] <= cfg.tol ? SolveStatus::Converged : SolveStatus::MaxIterations;
    report.iterates.push_back({x, lambda});
    return report;
  }

  Vector x = start.x;
  Vector lambda = start.lambda;
  double norm = report.residual_norms.back();

  report.status = SolveStatus::MaxIterations;
  if (norm <= cfg.tol) report.status = SolveStatus::Converged;
  while (report.status != SolveStatus::Converged && report.iterations < cfg.max_iter) {
    const Vector v = prox(p.phi(), c, p.e().apply(x) + lambda / c);
    const Vector w = v - lambda / c;
    if (quadratic)
      x = quadratic_solver.solve(linear_term + c * p.e().apply_transpose(w));
    else
      x = damped_newton_subproblem(p, x, w, ete, c);
    lambda += c * (p.e().apply(x) - v);

    ++report.iterations;
    const double next = kkt_residual(p, x, lambda);
    report.ratios.push_back(next / norm);
    report.residual_norms.push_back(next);
    norm = next;
    if (!std::isfinite(norm)) {
      report.status = SolveStatus::Diverged;
      break;
    }
    if (norm <= cfg.tol) report.status = SolveStatus::Converged;
  }
  report.iterates.push_back({x, lambda});
  return report;
}

Vector prox_gradient(const Problem& p, const Vector& start_x, const OracleConfig& cfg) {
  cfg.validate();
  if (!p.e().is_identity())
    throw PreconditionError("prox_gradient requires E to be the identity");
  if (start_x.size() != p.n()) throw DimensionError("prox_gradient start has wrong length");

  const SmoothObjective& f = p.smooth();
  Vector x = start_x;
  double step = 1.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const Vector g = f.gradient(x);
    const double fx = f.value(x);
    Vector next;
    Vector d;
    while (true) {
      next = prox(p.phi(), 1.0 / step, x - step * g);
      d = next - x;
      if (f.value(next) <= fx + g.dot(d) + d.squaredNorm() / (2.0 * step) + 1e-15 * std::abs(fx))
        break;
      step *= 0.5;
      if (step < 1e-20) throw std::runtime_error("prox_gradient backtracking failed");
    }
    x = std::move(next);
    if (inf_norm(d) / step <= cfg.tol) return x;
  }
  throw std::runtime_error("prox_gradient did not reach tolerance in " +
                           std::to_string(cfg.max_iter) + " iterations");
}

PrimalDual brute_force_kkt(const Problem& p, const GridSpec& grid) {
  const Index n = p.n();
  if (n < 1 || n > 2 || p.m() > 2)
    throw DimensionError("brute_force_kkt handles n <= 2 and m <= 2 only");
  if (grid.lower.size() != n || grid.upper.size() != n)
    throw DimensionError("grid bounds must have length n");
  if (grid.points_per_dim < 3) throw ParameterError("grid needs at least 3 points per dimension");
  for (Index j = 0; j < n; ++j)
    if (!(grid.lower[j] < grid.upper[j]) || !std::isfinite(grid.upper[j] - grid.lower[j]))
      throw ParameterError("grid bounds must be finite with lower < upper");

  const double inf = std::numeric_limits<double>::infinity();
  auto objective = [&](const Vector& x) {
    const ExtendedReal v = p.objective(x);
    return v.is_infinite() ? inf : v.value();
  };

  const int k = grid.points_per_dim;
  const Vector spacing = (grid.upper - grid.lower) / static_cast<double>(k - 1);
  auto point = [&](const Eigen::Vector2i& idx) {
    Vector x(n);
    for (Index j = 0; j < n; ++j) x[j] = grid.lower[j] + spacing[j] * idx[j];
    return x;
  };

  std::vector<std::pair<Eigen::Vector2i, double>> samples;
  samples.reserve(static_cast<std::size_t>(n == 1 ? k : k * k));
  const int k2 = n == 2 ? k : 1;
  double best = inf;
  Eigen::Vector2i best_idx(0, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k2; ++b) {
      const Eigen::Vector2i idx(a, b);
      const double v = objective(point(idx));
      samples.emplace_back(idx, v);
      if (v < best) {
        best = v;
        best_idx = idx;
      }
    }
  if (!std::isfinite(best)) throw AmbiguityError("objective is infinite on the whole grid");

  const double ambiguity_tol = 1e-12 * (1.0 + std::abs(best));
  for (const auto& [idx, v] : samples) {
    if (v - best > ambiguity_tol) continue;
    if ((idx - best_idx).cwiseAbs().maxCoeff() > 2)
      throw AmbiguityError("objective minimum is attained at well-separated grid points");
  }

  // Golden-section refinement along a fixed set of directions: the axes,
  // and in the plane also the diagonals and the tangent of every kink line
  // {e_i . x = const}, so the search can slide along a nonsmooth valley.
  // The incumbent is always feasible, which resolves comparisons between two
  // infinite probes.
  std::vector<Vector> directions;
  for (Index j = 0; j < n; ++j) directions.push_back(Vector::Unit(n, j));
  if (n == 2) {
    directions.push_back(Eigen::Vector2d(1.0, 1.0).normalized());
    directions.push_back(Eigen::Vector2d(1.0, -1.0).normalized());
    const Matrix e = p.e().to_dense();
    for (Index i = 0; i < e.rows(); ++i)
      if (e.row(i).norm() > 0.0) directions.push_back(Eigen::Vector2d(-e(i, 1), e(i, 0)).normalized());
  }
  Vector x = point(best_idx);
  double fx = best;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  // The bracket keeps its width while rounds still travel a good part of
  // it and halves otherwise.
  const int rounds = n == 1 ? 1 : 2000;
  double width = spacing.maxCoeff();
  for (int round = 0; round < rounds; ++round) {
    const Vector before = x;
    for (const Vector& d : directions) {
      GoldenBracket br{-width, width};
      auto eval_at = [&](double t) { return objective(x + t * d); };
      double t1 = br.hi - inv_phi * (br.hi - br.lo);
      double t2 = br.lo + inv_phi * (br.hi - br.lo);
      double f1 = eval_at(t1), f2 = eval_at(t2);
      while (br.hi - br.lo > 1e-13 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
        bool keep_left;
        if (std::isinf(f1) && std::isinf(f2))
          keep_left = 0.0 < t1;
        else
          keep_left = f1 < f2;
        if (keep_left) {
          br.hi = t2;
          t2 = t1;
          f2 = f1;
          t1 = br.hi - inv_phi * (br.hi - br.lo);
          f1 = eval_at(t1);
        } else {
          br.lo = t1;
          t1 = t2;
          f1 = f2;
          t2 = br.lo + inv_phi * (br.hi - br.lo);
          f2 = eval_at(t2);
        }
      }
      const double mid = 0.5 * (br.lo + br.hi);
      const double fm = eval_at(mid);
      if (fm <= fx) {
        x += mid * d;
        fx = fm;
      }
    }
    if ((x - before).norm() < 0.25 * width) width *= 0.5;
    if (width < 1e-14 * (1.0 + x.lpNorm<Eigen::Infinity>())) break;
  }

  PrimalDual out{x, Vector::Zero(p.m())};
  if (p.m() > 0) {
    const Matrix et = p.e().to_dense().transpose();
    out.lambda = et.colPivHouseholderQr().solve(Vector(-p.smooth().gradient(x)));
  }
  return out;
}

}  // namespace lagnewton
