#include "lagnewton/symmetric_indefinite.hpp"

#include "lagnewton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lagnewton {

namespace {

// Bunch-Kaufman growth constant (1 + sqrt(17)) / 8.
const double kAlpha = (1.0 + std::sqrt(17.0)) / 8.0;

// Eigenvalues of [[a, b], [b, d]].
std::pair<double, double> eig2(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), b);
  return {mean - rad, mean + rad};
}

// Symmetric interchange of rows/columns i and j in a full symmetric matrix,
// restricted to the trailing block starting at k.
void symmetric_swap(Matrix& a, Index k, Index i, Index j) {
  if (i == j) return;
  const Index n = a.rows();
  a.block(i, k, 1, n - k).swap(a.block(j, k, 1, n - k));
  a.block(k, i, n - k, 1).swap(a.block(k, j, n - k, 1));
}

}  // namespace

SymmetricIndefiniteFactorization::SymmetricIndefiniteFactorization(const Matrix& input,
                                                                   double relative_pivot_tol)
    : tol_(relative_pivot_tol) {
  if (input.rows() != input.cols())
    throw DimensionError("symmetric factorization needs a square matrix, got " +
                         describe_shape(input.rows(), input.cols()));
  const Index n = input.rows();
  Matrix a = input.selfadjointView<Eigen::Lower>();
  l_ = Matrix::Identity(n, n);
  d_diag_ = Vector::Zero(n);
  d_sub_ = Vector::Zero(n);
  block_size_.assign(static_cast<std::size_t>(n), 0);
  perm_.resize(static_cast<std::size_t>(n));
  std::iota(perm_.begin(), perm_.end(), Index{0});

  std::vector<double> pivots;
  // Swap positions i and r; the trailing block starts at `from`, which is
  // below i for the second row of a 2x2 pivot.
  auto interchange = [&](Index from, Index i, Index r) {
    if (i == r) return;
    symmetric_swap(a, from, i, r);
    l_.block(i, 0, 1, from).swap(l_.block(r, 0, 1, from));
    std::swap(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(r)]);
  };

  Index k = 0;
  while (k < n) {
    const Index rest = n - k - 1;
    double colmax = 0.0;
    Index r = k;
    if (rest > 0) {
      Index off;
      colmax = a.col(k).tail(rest).cwiseAbs().maxCoeff(&off);
      r = k + 1 + off;
    }
    const double akk = std::abs(a(k, k));

    Index step = 1;
    if (std::max(akk, colmax) == 0.0) {
      // Zero column: nothing to eliminate, record an exact zero pivot.
      d_diag_[k] = 0.0;
      block_size_[static_cast<std::size_t>(k)] = 1;
      pivots.push_back(0.0);
      ++k;
      continue;
    }
    if (akk < kAlpha * colmax) {
      // Largest off-diagonal in row/column r of the trailing block.
      double rowmax = 0.0;
      for (Index j = k; j < n; ++j)
        if (j != r) rowmax = std::max(rowmax, std::abs(a(r, j)));
      if (akk * rowmax >= kAlpha * colmax * colmax) {
        // 1x1 pivot at k without interchange.
      } else if (std::abs(a(r, r)) >= kAlpha * rowmax) {
        interchange(k, k, r);
      } else {
        interchange(k, k + 1, r);
        step = 2;
      }
    }

    const Index tail = n - k - step;
    if (step == 1) {
      const double d = a(k, k);
      d_diag_[k] = d;
      block_size_[static_cast<std::size_t>(k)] = 1;
      pivots.push_back(std::abs(d));
      if (tail > 0 && d != 0.0) {
        const Vector w = a.col(k).tail(tail);
        l_.col(k).tail(tail) = w / d;
        a.bottomRightCorner(tail, tail).noalias() -= (w / d) * w.transpose();
      }
    } else {
      const double d11 = a(k, k), d21 = a(k + 1, k), d22 = a(k + 1, k + 1);
      d_diag_[k] = d11;
      d_diag_[k + 1] = d22;
      d_sub_[k] = d21;
      block_size_[static_cast<std::size_t>(k)] = 2;
      const auto [lo, hi] = eig2(d11, d21, d22);
      pivots.push_back(std::min(std::abs(lo), std::abs(hi)));
      pivots.push_back(std::max(std::abs(lo), std::abs(hi)));
      if (tail > 0) {
        const double det = d11 * d22 - d21 * d21;
        Eigen::Matrix2d dinv;
        dinv << d22 / det, -d21 / det, -d21 / det, d11 / det;
        const Matrix w = a.block(k + step, k, tail, 2);
        const Matrix lw = w * dinv;
        l_.block(k + step, k, tail, 2) = lw;
        a.bottomRightCorner(tail, tail).noalias() -= lw * w.transpose();
      }
    }
    k += step;
  }

  if (!pivots.empty()) {
    min_pivot_ = *std::min_element(pivots.begin(), pivots.end());
    max_pivot_ = *std::max_element(pivots.begin(), pivots.end());
    singular_ = max_pivot_ == 0.0 || min_pivot_ < tol_ * max_pivot_ || !std::isfinite(max_pivot_);
  }
}

SymmetricIndefiniteFactorization::Inertia SymmetricIndefiniteFactorization::inertia() const {
  Inertia out;
  const Index n = size();
  const double cutoff = tol_ * max_pivot_;
  auto count = [&](double ev) {
    if (std::abs(ev) < cutoff || ev == 0.0)
      ++out.zero;
    else if (ev > 0)
      ++out.positive;
    else
      ++out.negative;
  };
  for (Index k = 0; k < n;) {
    if (block_size_[static_cast<std::size_t>(k)] == 2) {
      const auto [lo, hi] = eig2(d_diag_[k], d_sub_[k], d_diag_[k + 1]);
      count(lo);
      count(hi);
      k += 2;
    } else {
      count(d_diag_[k]);
      k += 1;
    }
  }
  return out;
}

Vector SymmetricIndefiniteFactorization::solve(const Vector& b) const {
  const Index n = size();
  if (b.size() != n)
    throw DimensionError("right-hand side has length " + std::to_string(b.size()) +
                         ", system has size " + std::to_string(n));
  if (singular_)
    throw SingularSystemError("symmetric indefinite factorization is singular (pivot ratio " +
                              std::to_string(max_pivot_ > 0 ? min_pivot_ / max_pivot_ : 0.0) +
                              ")");
  Vector y(n);
  for (Index i = 0; i < n; ++i) y[i] = b[perm_[static_cast<std::size_t>(i)]];
  l_.triangularView<Eigen::UnitLower>().solveInPlace(y);
  for (Index k = 0; k < n;) {
    if (block_size_[static_cast<std::size_t>(k)] == 2) {
      const double d11 = d_diag_[k], d21 = d_sub_[k], d22 = d_diag_[k + 1];
      const double det = d11 * d22 - d21 * d21;
      const double y1 = y[k], y2 = y[k + 1];
      y[k] = (d22 * y1 - d21 * y2) / det;
      y[k + 1] = (d11 * y2 - d21 * y1) / det;
      k += 2;
    } else {
      y[k] /= d_diag_[k];
      k += 1;
    }
  }
  l_.transpose().triangularView<Eigen::UnitUpper>().solveInPlace(y);
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[perm_[static_cast<std::size_t>(i)]] = y[i];
  return x;
}

}  // namespace lagnewton
