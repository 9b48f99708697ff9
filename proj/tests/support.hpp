#pragma once

#include "lagnewton/lagrangian.hpp"
#include "lagnewton/linear_map.hpp"
#include "lagnewton/objective.hpp"
#include "lagnewton/problem.hpp"
#include "lagnewton/prox.hpp"

#include <cmath>
#include <memory>
#include <random>

namespace testing_support {

using namespace lagnewton;

inline Vector gaussian(std::mt19937_64& rng, Index n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

inline Matrix gaussian(std::mt19937_64& rng, Index r, Index c, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix a(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) a(i, j) = g(rng);
  return a;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Box with a mix of two-sided, one-sided and free rows.
inline ProxFunction random_box(std::mt19937_64& rng, Index m) {
  const double inf = std::numeric_limits<double>::infinity();
  Vector lo(m), hi(m);
  for (Index j = 0; j < m; ++j) {
    const double a = uniform(rng, -1.5, 0.5);
    const double b = a + uniform(rng, 0.2, 2.0);
    switch (j % 4) {
      case 1: lo(j) = -inf; hi(j) = b; break;
      case 2: lo(j) = a; hi(j) = inf; break;
      default: lo(j) = a; hi(j) = b;
    }
  }
  return ProxFunction::box(lo, hi);
}

inline std::shared_ptr<QuadraticObjective> random_quadratic(std::mt19937_64& rng, Index n) {
  const Matrix m = gaussian(rng, 2 * n, n, 1.0 / std::sqrt(2.0 * n));
  Matrix a = m.transpose() * m + 0.1 * Matrix::Identity(n, n);
  a = 0.5 * (a + a.transpose()).eval();
  return std::make_shared<QuadraticObjective>(a, gaussian(rng, n));
}

inline std::shared_ptr<SoftplusObjective> random_softplus(std::mt19937_64& rng, Index n) {
  return std::make_shared<SoftplusObjective>(0.5, 1.5, gaussian(rng, n), gaussian(rng, n));
}

// Random problem: quadratic or softplus f, dense or sparse E, box or l1 phi.
inline Problem random_problem(std::mt19937_64& rng, Index n, Index m, bool box, double c,
                              bool smooth_nonquadratic = false, bool sparse = false) {
  std::shared_ptr<const SmoothObjective> f;
  if (smooth_nonquadratic)
    f = random_softplus(rng, n);
  else
    f = random_quadratic(rng, n);
  Matrix e = gaussian(rng, m, n, 1.0 / std::sqrt(double(n)));
  LinearMap map = sparse ? LinearMap::sparse(e.sparseView()) : LinearMap::dense(e);
  ProxFunction phi = box ? random_box(rng, m) : ProxFunction::l1(uniform(rng, 0.2, 1.5));
  return Problem(f, std::move(map), std::move(phi), c);
}

inline Problem scalar_problem(double a, double b, ProxFunction phi, double c = 1.0) {
  return Problem(std::make_shared<QuadraticObjective>(Matrix::Constant(1, 1, a), Vector::Constant(1, b)),
                 LinearMap::identity(1), std::move(phi), c);
}

inline PrimalDual point(double x, double lambda) {
  return {Vector::Constant(1, x), Vector::Constant(1, lambda)};
}

// Cyclic Jacobi eigenvalues of a symmetric matrix; slow but self-contained.
inline Vector jacobi_eigenvalues(Matrix a) {
  const Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = cs * akp - sn * akq;
          a(k, q) = sn * akp + cs * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = cs * apk - sn * aqk;
          a(q, k) = sn * apk + cs * aqk;
        }
      }
  }
  return a.diagonal();
}

inline double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testing_support
