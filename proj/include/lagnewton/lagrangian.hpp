#pragma once

#include "lagnewton/problem.hpp"

namespace lagnewton {

/// L_c(x, lambda) = f(x) + phi_c(E x + lambda/c) - ||lambda||^2 / (2c).
/// Finite everywhere.
double eval_Lc(const Problem& p, const PrimalDual& pt);

/// D_x L_c = grad f(x) + c E^T (z - prox_{phi/c}(z)), z = E x + lambda/c.
Vector grad_x_Lc(const Problem& p, const PrimalDual& pt);

/// D_lambda L_c = E x - prox_{phi/c}(z).
Vector grad_lambda_Lc(const Problem& p, const PrimalDual& pt);

/// Phi_c(x, lambda) = (D_x L_c, D_lambda L_c), length n + m. Vanishes exactly
/// at solutions of the Lagrange optimality system.
Vector residual(const Problem& p, const PrimalDual& pt);

/// Max-norm of `residual`; the norm used for stopping and reporting.
double residual_norm(const Problem& p, const PrimalDual& pt);

/// ||D_x L_c - (grad f + E^T (lambda + c D_lambda L_c))||_2.
double check_identity_Lx(const Problem& p, const PrimalDual& pt);

struct KktResiduals {
  double stationarity;  ///< ||grad f(x) + E^T lambda||_inf
  double feasibility;   ///< ||E x - prox_{phi/c}(E x + lambda/c)||_inf

  double max() const { return stationarity > feasibility ? stationarity : feasibility; }
};

/// Residuals of the c-independent optimality system
///   grad f(x) + E^T lambda = 0,  E x = prox_{phi/c}(E x + lambda/c).
KktResiduals check_optimality_kkt3(const Problem& p, const PrimalDual& pt);

/// x-gradient of the generalized Moreau-Yosida approximation
/// psi_c(y, lambda) = phi_c(y + lambda/c) - ||lambda||^2/(2c) at y = E x.
Vector psi_c_grad(const Problem& p, const PrimalDual& pt);

}  // namespace lagnewton
