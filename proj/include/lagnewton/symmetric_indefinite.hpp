#pragma once

#include "lagnewton/prox.hpp"

#include <vector>

namespace lagnewton {

/// Dense Bunch-Kaufman factorization P A P^T = L D L^T of a symmetric,
/// possibly indefinite matrix. D is block diagonal with 1x1 and 2x2 blocks.
///
/// Only the lower triangle of A is read. The factorization is flagged
/// singular when the smallest pivot magnitude (smallest |eigenvalue| for a
/// 2x2 block) falls below `relative_pivot_tol` times the largest.
class SymmetricIndefiniteFactorization {
 public:
  explicit SymmetricIndefiniteFactorization(const Matrix& a, double relative_pivot_tol = 1e-12);

  bool singular() const noexcept { return singular_; }
  Index size() const noexcept { return l_.rows(); }
  double smallest_pivot() const noexcept { return min_pivot_; }
  double largest_pivot() const noexcept { return max_pivot_; }

  /// Number of positive, negative and zero-flagged pivots (eigenvalues of D).
  struct Inertia {
    Index positive = 0;
    Index negative = 0;
    Index zero = 0;
  };
  Inertia inertia() const;

  /// Solves A x = b. Throws SingularSystemError when singular().
  Vector solve(const Vector& b) const;

 private:
  Matrix l_;                      // unit lower triangular
  Vector d_diag_;                 // diagonal of D
  Vector d_sub_;                  // subdiagonal of D, nonzero inside 2x2 blocks
  std::vector<Index> block_size_; // 1 or 2, at the first index of each block; 0 otherwise
  std::vector<Index> perm_;       // row i of P A P^T is row perm_[i] of A
  double min_pivot_ = 0.0;
  double max_pivot_ = 0.0;
  double tol_;
  bool singular_ = false;
};

}  // namespace lagnewton
