#pragma once

#include "lagnewton/problem.hpp"
#include "lagnewton/report.hpp"

namespace lagnewton {

// Reference solvers used to validate the Newton iteration. They use Eigen's
// Cholesky and QR rather than the Newton module's factorizations.

struct OracleConfig {
  int max_iter = 50000;
  double tol = 1e-9;
  double c = 1.0;

  void validate() const;
};

/// First-order augmented Lagrangian (alternating) scheme:
///   v      <- prox_{phi/c}(E x + lambda/c)
///   x      <- argmin f(x) + (c/2)||E x - v + lambda/c||^2
///   lambda <- lambda + c (E x - v)
/// Stops when max(||grad f + E^T lambda||_inf, ||E x - prox(E x + lambda/c)||_inf) <= tol.
/// The x-update is one Cholesky solve for quadratic f and a damped Newton
/// loop otherwise.
SolveReport alm_first_order(const Problem& p, const PrimalDual& start, const OracleConfig& cfg);

/// Forward-backward splitting x <- prox_{s phi}(x - s grad f(x)) with
/// backtracking on s. Requires E = I. Stops when the gradient mapping
/// ||x+ - x||_inf / s falls below tol; throws std::runtime_error when the
/// budget runs out.
Vector prox_gradient(const Problem& p, const Vector& start_x, const OracleConfig& cfg);

/// Axis-aligned grid for brute_force_kkt.
struct GridSpec {
  Vector lower;
  Vector upper;
  int points_per_dim = 2001;
};

/// Ground truth for toy problems (n <= 2, m <= 2): grid scan of
/// f(x) + phi(E x), golden-section refinement per coordinate, then
/// lambda from least squares on E^T lambda = -grad f(x). Throws
/// AmbiguityError when near-minimal grid points are far apart.
PrimalDual brute_force_kkt(const Problem& p, const GridSpec& grid);

}  // namespace lagnewton
