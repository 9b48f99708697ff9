#include "lagnewton/instances.hpp"

#include "lagnewton/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <limits>
#include <random>

namespace lagnewton {

namespace {

Matrix gaussian(std::mt19937_64& rng, Index rows, Index cols, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = scale * normal(rng);
  return out;
}

double median_abs(const Vector& v) {
  std::vector<double> a(v.data(), v.data() + v.size());
  for (double& x : a) x = std::abs(x);
  std::nth_element(a.begin(), a.begin() + static_cast<long>(a.size() / 2), a.end());
  return a[a.size() / 2];
}

}  // namespace

QpData make_qp_data(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw DimensionError("random QP needs n, m >= 1");
  std::mt19937_64 rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const Matrix mm = gaussian(rng, 2 * n, n, 1.0 / std::sqrt(2.0 * static_cast<double>(n)));
  QpData d;
  d.a = mm.transpose() * mm + 1e-2 * Matrix::Identity(n, n);
  d.a = 0.5 * (d.a + d.a.transpose()).eval();
  d.b = gaussian(rng, n, 1, 1.0);
  const Index wanted = std::min(n, m);
  for (int attempt = 0;; ++attempt) {
    d.e = gaussian(rng, m, n, scale);
    if (Eigen::ColPivHouseholderQR<Matrix>(d.e).rank() == wanted) break;
    if (attempt > 100) throw std::runtime_error("could not draw a maximal-rank E");
  }
  return d;
}

Problem make_qp_box(Index n, Index m, std::uint64_t seed, double c) {
  QpData d = make_qp_data(n, m, seed);
  const Vector unconstrained = d.a.llt().solve(d.b);
  const Vector y = d.e * unconstrained;
  const double width = 0.5 * median_abs(y);
  Vector lower = Vector::Constant(m, -width);
  Vector upper = Vector::Constant(m, width);
  for (Index j = 0; j < m; j += 5) lower[j] = -std::numeric_limits<double>::infinity();
  return Problem(std::make_shared<QuadraticObjective>(std::move(d.a), std::move(d.b)),
                 LinearMap::dense(std::move(d.e)), ProxFunction::box(lower, upper), c);
}

Problem make_qp_l1(Index n, Index m, std::uint64_t seed, double c) {
  QpData d = make_qp_data(n, m, seed);
  const double alpha = 1.0;
  return Problem(std::make_shared<QuadraticObjective>(std::move(d.a), std::move(d.b)),
                 LinearMap::dense(std::move(d.e)), ProxFunction::l1(alpha), c);
}

Problem make_toy_box(double c) {
  const double inf = std::numeric_limits<double>::infinity();
  return Problem(std::make_shared<QuadraticObjective>(Matrix::Identity(1, 1), Vector::Constant(1, 2.0)),
                 LinearMap::identity(1), ProxFunction::box(Vector::Constant(1, -inf), Vector::Ones(1)),
                 c);
}

Problem make_toy_l1(double c) {
  return Problem(std::make_shared<QuadraticObjective>(Matrix::Identity(1, 1), Vector::Constant(1, 2.0)),
                 LinearMap::identity(1), ProxFunction::l1(1.0), c);
}

Problem make_rank_deficient_box(double c) {
  const double inf = std::numeric_limits<double>::infinity();
  return Problem(std::make_shared<QuadraticObjective>(Matrix::Identity(1, 1), Vector::Constant(1, 2.0)),
                 LinearMap::dense(Matrix::Ones(2, 1)),
                 ProxFunction::box(Vector::Constant(2, -inf), Vector::Ones(2)), c);
}

}  // namespace lagnewton
