#include "lagnewton/linear_map.hpp"

#include "lagnewton/errors.hpp"

#include <string>

namespace lagnewton {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

LinearMap LinearMap::dense(Matrix e) {
  const Index r = e.rows(), c = e.cols();
  return LinearMap(Storage(std::move(e)), r, c);
}

LinearMap LinearMap::sparse(SparseMatrix e) {
  e.makeCompressed();
  const Index r = e.rows(), c = e.cols();
  return LinearMap(Storage(std::move(e)), r, c);
}

LinearMap LinearMap::identity(Index n) {
  if (n < 0) throw DimensionError("identity of negative size");
  return LinearMap(Storage(Identity{}), n, n);
}

bool LinearMap::is_identity() const {
  if (rows_ != cols_) return false;
  return std::visit(overloaded{
                        [](const Identity&) { return true; },
                        [](const Matrix& e) { return e.isIdentity(0.0); },
                        [this](const SparseMatrix& e) {
                          if (e.nonZeros() != rows_) return false;
                          for (Index i = 0; i < e.outerSize(); ++i)
                            for (SparseMatrix::InnerIterator it(e, i); it; ++it)
                              if (it.col() != i || it.value() != 1.0) return false;
                          return true;
                        },
                    },
                    storage_);
}

Vector LinearMap::apply(const Vector& x) const {
  if (x.size() != cols_)
    throw DimensionError("E is " + describe_shape(rows_, cols_) + " but x has length " +
                         std::to_string(x.size()));
  return std::visit(overloaded{
                        [&](const Identity&) -> Vector { return x; },
                        [&](const Matrix& e) -> Vector { return e * x; },
                        [&](const SparseMatrix& e) -> Vector { return e * x; },
                    },
                    storage_);
}

Vector LinearMap::apply_transpose(const Vector& y) const {
  if (y.size() != rows_)
    throw DimensionError("E is " + describe_shape(rows_, cols_) + " but y has length " +
                         std::to_string(y.size()));
  return std::visit(overloaded{
                        [&](const Identity&) -> Vector { return y; },
                        [&](const Matrix& e) -> Vector { return e.transpose() * y; },
                        [&](const SparseMatrix& e) -> Vector { return e.transpose() * y; },
                    },
                    storage_);
}

Matrix LinearMap::rows_dense(std::span<const Index> idx) const {
  Matrix out = Matrix::Zero(static_cast<Index>(idx.size()), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Index i = idx[k];
    if (i < 0 || i >= rows_) throw DimensionError("row index out of range");
    std::visit(overloaded{
                   [&](const Identity&) { out(static_cast<Index>(k), i) = 1.0; },
                   [&](const Matrix& e) { out.row(static_cast<Index>(k)) = e.row(i); },
                   [&](const SparseMatrix& e) {
                     for (SparseMatrix::InnerIterator it(e, i); it; ++it)
                       out(static_cast<Index>(k), it.col()) = it.value();
                   },
               },
               storage_);
  }
  return out;
}

Matrix LinearMap::weighted_gram(const Vector& w) const {
  if (w.size() != rows_) throw DimensionError("gram weight length does not match rows of E");
  return std::visit(overloaded{
                        [&](const Identity&) -> Matrix { return Matrix(w.asDiagonal()); },
                        [&](const Matrix& e) -> Matrix {
                          return e.transpose() * w.asDiagonal() * e;
                        },
                        [&](const SparseMatrix& e) -> Matrix {
                          SparseMatrix we = w.asDiagonal() * e;
                          return Matrix(SparseMatrix(e.transpose()) * we);
                        },
                    },
                    storage_);
}

Matrix LinearMap::to_dense() const {
  return std::visit(overloaded{
                        [&](const Identity&) -> Matrix { return Matrix::Identity(rows_, cols_); },
                        [](const Matrix& e) -> Matrix { return e; },
                        [](const SparseMatrix& e) -> Matrix { return Matrix(e); },
                    },
                    storage_);
}

}  // namespace lagnewton
