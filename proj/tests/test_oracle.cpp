#include "support.hpp"

#include "lagnewton/errors.hpp"
#include "lagnewton/instances.hpp"
#include "lagnewton/newton.hpp"
#include "lagnewton/oracle.hpp"

#include <doctest.h>

using namespace lagnewton;
using namespace testing_support;

namespace {

const double inf = std::numeric_limits<double>::infinity();

Problem toy_l1() { return scalar_problem(1.0, 2.0, ProxFunction::l1(1.0)); }
Problem toy_box() { return scalar_problem(1.0, 2.0, ProxFunction::box(Vector::Constant(1, -inf), Vector::Ones(1))); }

GridSpec line(double lo, double hi) { return {Vector::Constant(1, lo), Vector::Constant(1, hi), 2001}; }

// The same smooth part and phi with E = I, for comparing against forward-backward splitting.
Problem lasso(std::mt19937_64& rng, Index n, double alpha) {
  return Problem(random_quadratic(rng, n), LinearMap::identity(n), ProxFunction::l1(alpha), 1.0);
}

}  // namespace

TEST_CASE("first-order ALM on the toy problems") {
  const SolveReport r = alm_first_order(toy_l1(), point(0, 0), OracleConfig{});
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.final_point().x(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.final_point().lambda(0) == doctest::Approx(1.0).epsilon(1e-8));

  const SolveReport b = alm_first_order(toy_box(), point(0, 0), OracleConfig{});
  CHECK(b.converged());
  CHECK(b.final_point().x(0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("unconstrained phi is a single smooth solve") {
  std::mt19937_64 rng(51);
  for (bool smooth_nonquadratic : {false, true}) {
    const Problem p(smooth_nonquadratic ? std::shared_ptr<const SmoothObjective>(random_softplus(rng, 4))
                                        : random_quadratic(rng, 4),
                    LinearMap::dense(gaussian(rng, 3, 4, 1.0)),
                    ProxFunction::box(Vector::Constant(3, -inf), Vector::Constant(3, inf)), 1.0);
    const SolveReport r = alm_first_order(p, PrimalDual::zeros(p), OracleConfig{});
    CHECK(r.converged());
    CHECK(r.iterations == 1);
    CHECK(r.final_point().lambda.norm() == 0.0);
    CHECK(max_abs(p.smooth().gradient(r.final_point().x)) <= 1e-9);
  }
}

TEST_CASE("oracle and Newton agree on random problems") {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 8; ++k) {
    const Problem p = random_problem(rng, 12, 7, k % 2, 1.0, k >= 4);
    const SolveReport o = alm_first_order(p, PrimalDual::zeros(p), OracleConfig{});
    REQUIRE(o.converged());
    NewtonConfig cfg;
    cfg.warm_start_steps = 50;
    const SolveReport n = solve(p, PrimalDual::zeros(p), cfg);
    REQUIRE(n.converged());
    const double ref = max_abs(o.final_point().x);
    CHECK(max_abs(n.final_point().x - o.final_point().x) <= 1e-6 * (1 + ref));
  }
}

TEST_CASE("oracle budget and configuration") {
  OracleConfig cfg;
  cfg.max_iter = 2;
  cfg.tol = 1e-15;
  const SolveReport r = alm_first_order(make_qp_l1(10, 5, 1), PrimalDual{Vector::Zero(10), Vector::Zero(5)}, cfg);
  CHECK(r.status == SolveStatus::MaxIterations);
  CHECK(r.iterations == 2);
  cfg = OracleConfig{};
  cfg.tol = -1;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("proximal gradient") {
  const Vector x = prox_gradient(toy_l1(), Vector::Zero(1), OracleConfig{});
  CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-8));

  // f = |x - q|^2 / 2 with q inside the box: the answer is q.
  const Vector q = (Vector(3) << 0.2, -0.4, 0.9).finished();
  const Problem inside(std::make_shared<QuadraticObjective>(Matrix::Identity(3, 3), q), LinearMap::identity(3),
                       ProxFunction::box(Vector::Constant(3, -1), Vector::Ones(3)), 1.0);
  CHECK(max_abs(prox_gradient(inside, Vector::Zero(3), OracleConfig{}) - q) <= 1e-9);

  const Problem dense_e(std::make_shared<QuadraticObjective>(Matrix::Identity(2, 2), Vector::Zero(2)),
                        LinearMap::dense(Matrix::Identity(2, 2)), ProxFunction::l1(1.0), 1.0);
  CHECK_NOTHROW(prox_gradient(dense_e, Vector::Zero(2), OracleConfig{}));
  const Problem not_identity(std::make_shared<QuadraticObjective>(Matrix::Identity(2, 2), Vector::Zero(2)),
                             LinearMap::dense((Matrix(2, 2) << 1, 1, 0, 1).finished()), ProxFunction::l1(1.0), 1.0);
  CHECK_THROWS_AS(prox_gradient(not_identity, Vector::Zero(2), OracleConfig{}), PreconditionError);
}

TEST_CASE("proximal gradient, ALM and Newton agree on a lasso") {
  std::mt19937_64 rng(53);
  const Problem p = lasso(rng, 100, 0.3);
  const Vector pg = prox_gradient(p, Vector::Zero(100), OracleConfig{});
  const SolveReport alm = alm_first_order(p, PrimalDual::zeros(p), OracleConfig{});
  REQUIRE(alm.converged());
  NewtonConfig cfg;
  cfg.formulation = Formulation::ActiveSet;
  cfg.warm_start_steps = 10;
  const SolveReport n = solve(p, PrimalDual::zeros(p), cfg);
  REQUIRE(n.converged());
  CHECK(max_abs(pg - alm.final_point().x) <= 1e-6 * (1 + max_abs(pg)));
  CHECK(max_abs(pg - n.final_point().x) <= 1e-6 * (1 + max_abs(pg)));
}

TEST_CASE("brute force on the toy problems") {
  const PrimalDual l = brute_force_kkt(toy_l1(), line(-4, 4));
  CHECK(l.x(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(l.lambda(0) == doctest::Approx(1.0).epsilon(1e-8));
  const PrimalDual b = brute_force_kkt(toy_box(), line(-4, 4));
  CHECK(b.x(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(b.lambda(0) == doctest::Approx(1.0).epsilon(1e-8));

  // Minimizer strictly inside the box: zero multiplier.
  const Problem inner = scalar_problem(1.0, 0.25, ProxFunction::box(Vector::Constant(1, -1), Vector::Ones(1)));
  const PrimalDual i = brute_force_kkt(inner, line(-3, 3));
  CHECK(i.x(0) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(std::abs(i.lambda(0)) <= 1e-8);

  // Soft-threshold closed form x = max(b - alpha, 0).
  for (double bb : {0.3, 1.7, 3.2}) {
    const PrimalDual s = brute_force_kkt(scalar_problem(1.0, bb, ProxFunction::l1(1.0)), line(-5, 5));
    CHECK(s.x(0) == doctest::Approx(std::max(bb - 1.0, 0.0)).epsilon(1e-7));
  }
}

TEST_CASE("brute force in two dimensions passes the optimality check") {
  std::mt19937_64 rng(54);
  for (int k = 0; k < 6; ++k) {
    const Problem p = random_problem(rng, 2, 1 + k % 2, k % 2, 1.0);
    const GridSpec grid{Vector::Constant(2, -6), Vector::Constant(2, 6), 401};
    const PrimalDual bf = brute_force_kkt(p, grid);
    CHECK(check_optimality_kkt3(p, bf).max() <= 1e-6);
  }
}

TEST_CASE("brute force rejects what it cannot certify") {
  // f = 0 on a flat valley: min_x |x1 - x2| has a line of minimizers.
  const Problem flat(std::make_shared<QuadraticObjective>(Matrix::Zero(2, 2), Vector::Zero(2)),
                     LinearMap::dense((Matrix(1, 2) << 1, -1).finished()), ProxFunction::l1(1.0), 1.0);
  CHECK_THROWS_AS(brute_force_kkt(flat, {Vector::Constant(2, -1), Vector::Constant(2, 1), 101}), AmbiguityError);

  std::mt19937_64 rng(55);
  const Problem big = random_problem(rng, 3, 2, true, 1.0);
  CHECK_THROWS_AS(brute_force_kkt(big, {Vector::Zero(3), Vector::Ones(3), 11}), DimensionError);
  CHECK_THROWS_AS(brute_force_kkt(toy_l1(), {Vector::Zero(1), Vector::Ones(1), 2}), ParameterError);
}
