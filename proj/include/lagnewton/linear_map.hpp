#pragma once

#include "lagnewton/prox.hpp"

#include <Eigen/SparseCore>

#include <span>
#include <variant>

namespace lagnewton {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// The linear map E : R^n -> R^m, stored densely, as compressed sparse rows,
/// or implicitly as the identity. Every consumer goes through products and
/// row extraction so the storage choice stays local to this class.
class LinearMap {
 public:
  static LinearMap dense(Matrix e);
  static LinearMap sparse(SparseMatrix e);
  static LinearMap identity(Index n);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }

  /// True for the implicit identity and for any stored matrix equal to I.
  bool is_identity() const;
  bool is_sparse() const noexcept { return std::holds_alternative<SparseMatrix>(storage_); }

  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& y) const;

  /// Rows `idx` of E as a dense |idx| x n matrix.
  Matrix rows_dense(std::span<const Index> idx) const;

  /// E^T diag(w) E, dense n x n.
  Matrix weighted_gram(const Vector& w) const;

  Matrix to_dense() const;

 private:
  struct Identity {};
  using Storage = std::variant<Identity, Matrix, SparseMatrix>;

  LinearMap(Storage storage, Index rows, Index cols)
      : storage_(std::move(storage)), rows_(rows), cols_(cols) {}

  Storage storage_;
  Index rows_;
  Index cols_;
};

}  // namespace lagnewton
