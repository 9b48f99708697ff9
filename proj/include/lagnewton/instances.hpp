#pragma once

#include "lagnewton/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lagnewton {

/// Random strictly convex quadratic f = 1/2 x'Ax - b'x with A = M'M + delta I,
/// delta = 1e-2, and a Gaussian E of maximal rank (full row rank whenever
/// m <= n; rank is verified and the draw repeated otherwise).
struct QpData {
  Matrix a;
  Vector b;
  Matrix e;
};

QpData make_qp_data(Index n, Index m, std::uint64_t seed);

/// qp-box: bounds on E x placed so that a substantial share of them bind at
/// the solution; every fifth row is one-sided.
Problem make_qp_box(Index n, Index m, std::uint64_t seed, double c = 1.0);

/// qp-l1: alpha ||E x||_1 with alpha sized so that E x has many zeros.
Problem make_qp_l1(Index n, Index m, std::uint64_t seed, double c = 1.0);

/// min 1/2 (x-2)^2 subject to x <= 1. Solution (x, lambda) = (1, 1).
Problem make_toy_box(double c = 1.0);

/// min 1/2 x^2 - 2x + |x|. Solution (x, lambda) = (1, 1).
Problem make_toy_l1(double c = 1.0);

/// min 1/2 (x-2)^2 subject to x <= 1 written twice (E = [1; 1]); the
/// constraint rows are linearly dependent.
Problem make_rank_deficient_box(double c = 1.0);

}  // namespace lagnewton
