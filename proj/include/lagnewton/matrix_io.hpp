#pragma once

#include "lagnewton/linear_map.hpp"

#include <iosfwd>
#include <string>

namespace lagnewton {

/// Matrix text formats:
///
/// * coordinate: a "%%MatrixMarket matrix coordinate real general" header
///   ("symmetric" and "integer" are accepted), '%' comments, a
///   "rows cols nnz" line, then nnz 1-indexed "row col value" triples;
/// * dense grid: a "rows cols" line followed by rows*cols values in
///   row-major order. Lines starting with '#' or '%' are comments.
///
/// Errors are ParseError carrying the 1-based line number.

/// Coordinate files become sparse maps, dense grids dense maps.
LinearMap parse_linear_map(std::istream& in, const std::string& source);
LinearMap read_linear_map(const std::string& path);

Matrix parse_dense_matrix(std::istream& in, const std::string& source);
Matrix read_dense_matrix(const std::string& path);

/// Reads a matrix with a single column (or a single row) as a vector.
Vector read_vector(const std::string& path);

/// Dense grid with full round-trip precision.
void write_dense_matrix(std::ostream& out, const Matrix& a);
void write_vector(const std::string& path, const Vector& v);
void write_matrix_market(std::ostream& out, const SparseMatrix& a);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace lagnewton
