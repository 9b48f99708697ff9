#pragma once

#include "lagnewton/problem.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lagnewton {

enum class SolveStatus { Converged, MaxIterations, SingularSystem, Diverged };

std::string_view to_string(SolveStatus status);

/// History of an iterative solve.
///
/// `residual_norms` holds iterations + 1 entries, the first for the starting
/// point. `ratios[k]` is residual_norms[k+1] / residual_norms[k].
/// The Newton solver records every iterate; first-order solvers record only
/// the start and the final point to keep long runs cheap.
struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<PrimalDual> iterates;
  std::vector<double> residual_norms;
  std::vector<double> ratios;
  int iterations = 0;
  /// Index sets {j : G_jj = 0} of the Jacobian element used at each step.
  std::vector<std::vector<Index>> active_set_history;
  /// Set when the solve stopped on an exception-free failure (singular system).
  std::string message;

  const PrimalDual& final_point() const { return iterates.back(); }
  double final_residual() const { return residual_norms.back(); }
  /// NaN when no step was taken.
  double last_ratio() const;
  bool converged() const { return status == SolveStatus::Converged; }
};

/// True when the trailing ratios are strictly decreasing (the last two
/// ratios, or a single ratio).
bool ratios_eventually_decreasing(const std::vector<double>& ratios);

}  // namespace lagnewton
