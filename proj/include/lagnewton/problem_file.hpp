#pragma once

#include "lagnewton/problem.hpp"

#include <optional>
#include <string>

namespace lagnewton {

/// Problem file (JSON):
///
///   {
///     "objective": {"kind": "quadratic", "A_path": "A.mtx", "b": [...]}
///               or {"kind": "builtin", "name": "softplus",
///                   "params": {"n": 3, "mu": 1, "weight": 1, "shift": 0, "b": [...]}},
///     "E_path": "E.mtx" or "identity",
///     "phi": {"kind": "box", "lower": [...], "upper": [...]}
///         or {"kind": "l1", "alpha": 1.0},
///     "defaults": {"c": 1.0, "tol": 1e-10, "max_iter": 100}
///   }
///
/// Relative paths resolve against the problem file's directory. Box bounds
/// accept numbers, "inf"/"-inf", or null for an absent bound.
struct LoadedProblem {
  Problem problem;
  std::optional<double> c;
  std::optional<double> tol;
  std::optional<int> max_iter;
};

LoadedProblem load_problem(const std::string& path);

/// Same, from JSON text; `base_dir` resolves relative matrix paths.
LoadedProblem parse_problem(const std::string& text, const std::string& source,
                            const std::string& base_dir);

}  // namespace lagnewton
