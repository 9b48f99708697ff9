#pragma once

#include "lagnewton/problem.hpp"
#include "lagnewton/report.hpp"

namespace lagnewton {

/// One element of the linear Newton approximation of Phi_c at (x, lambda):
///
///   [ D^2 f(x) + c E^T (I-G) E   ((I-G) E)^T ]
///   [ (I-G) E                    -G / c      ]
///
/// with G a diagonal 0/1 Jacobian element of prox_{phi/c} at E x + lambda/c.
struct LnaMatrix {
  Matrix block_xx;  ///< n x n, symmetric
  Matrix block_xl;  ///< n x m, equal to block_lx^T
  Matrix block_lx;  ///< m x n
  Vector block_ll;  ///< diagonal of the m x m lower-right block, entries 0 or -1/c

  Index n() const { return block_xx.rows(); }
  Index m() const { return block_lx.rows(); }
  /// The full (n+m) x (n+m) matrix.
  Matrix assembled() const;
};

LnaMatrix assemble_lna(const Problem& p, const PrimalDual& pt, const JacobianElement& g);

/// Max-abs difference between `lna.assembled()` and the split
///   D Phi_s - [c E^T; I] G [E, I/c],
/// scaled by max(1, max |entry|).
double lna_decomposition_error(const Problem& p, const PrimalDual& pt, const JacobianElement& g,
                               const LnaMatrix& lna);

/// Solves the Newton system lna * d = rhs by symmetric indefinite
/// factorization. Throws SingularSystemError on a pivot below 1e-12 of the
/// largest.
Vector newton_direction(const LnaMatrix& lna, const Vector& rhs);

/// Next iterate from the alternative full-step system
///
///   [ D^2 f(x)   E^T   ] [x+]   [ D^2 f(x) x - grad f(x) ]
///   [ (I-G) E   -G / c ] [l+] = [ prox(z) - G z          ],
///
/// solved with a pivoted LU since the matrix is not symmetric.
PrimalDual full_step_update(const Problem& p, const PrimalDual& pt, const JacobianElement& g);

/// Primal-dual active set update for a box indicator: lambda+ vanishes on
/// {G_jj = 1}; the rest comes from the reduced saddle system on {G_jj = 0}.
PrimalDual active_set_step_box(const Problem& p, const PrimalDual& pt, const JacobianElement& g);

/// Active set update for alpha ||.||_1: lambda+_j = alpha sign(z_j) on
/// {G_jj = 1}; the rest comes from the reduced saddle system.
PrimalDual active_set_step_l1(const Problem& p, const PrimalDual& pt, const JacobianElement& g);

enum class Formulation { Direction, FullStep, ActiveSet };

std::string_view to_string(Formulation f);

struct NewtonConfig {
  double c = 1.0;
  double tol = 1e-10;
  int max_iter = 100;
  TieRule tie_rule = TieRule::PreferZero;
  Formulation formulation = Formulation::Direction;
  double divergence_factor = 1e6;
  /// First-order augmented Lagrangian iterations run before Newton.
  int warm_start_steps = 0;
  /// Penalty used by those warm-start iterations. The optimality system does
  /// not depend on c, so any positive value gives a valid starting point.
  double warm_start_c = 1.0;

  void validate() const;
};

/// Linear Newton iteration on Phi_c(x, lambda) = 0 using `cfg.c` as the
/// penalty. Stops on ||Phi_c||_inf <= tol, the iteration budget, a singular
/// Newton system, or growth beyond divergence_factor times the initial
/// residual. Failures are reported through the status, never thrown.
SolveReport solve(const Problem& p, const PrimalDual& start, const NewtonConfig& cfg);

struct NonsingularityDiagnostics {
  double min_hessian_eigenvalue = 0.0;
  Index e_rank = 0;
  Index e_rows = 0;
  bool hessian_positive_definite = false;
  bool e_surjective = false;
  /// Positive definite Hessian and surjective E: every LNA element is
  /// nonsingular.
  bool hypotheses_hold = false;
};

/// Advisory check of the nonsingularity hypotheses at `pt`.
NonsingularityDiagnostics check_nonsingularity_conditions(const Problem& p, const PrimalDual& pt);

}  // namespace lagnewton
