#include "lagnewton/matrix_io.hpp"

#include "lagnewton/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace lagnewton {

namespace {

struct LineReader {
  std::istream& in;
  std::string source;
  std::size_t line_no = 0;

  // Next line that is neither blank nor a comment. Returns false at EOF.
  bool next(std::string& line, bool skip_percent = true) {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      if (skip_percent && line[first] == '%') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line_no, what); }
};

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_real(const LineReader& r, const std::string& tok) {
  std::string lowered = tok;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lowered == "inf" || lowered == "+inf" || lowered == "infinity")
    return std::numeric_limits<double>::infinity();
  if (lowered == "-inf" || lowered == "-infinity") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* begin = tok.data();
  if (!tok.empty() && tok[0] == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) r.fail("invalid number '" + tok + "'");
  return v;
}

long parse_int(const LineReader& r, const std::string& tok) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) r.fail("invalid integer '" + tok + "'");
  return v;
}

std::string lower_case(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

SparseMatrix parse_coordinate(LineReader& r, const std::string& header) {
  const auto fields = split_ws(lower_case(header));
  if (fields.size() != 5 || fields[1] != "matrix")
    r.fail("malformed MatrixMarket header");
  if (fields[2] != "coordinate") r.fail("only coordinate MatrixMarket files are supported");
  if (fields[3] != "real" && fields[3] != "integer" && fields[3] != "double")
    r.fail("unsupported MatrixMarket field '" + fields[3] + "'");
  const bool symmetric = fields[4] == "symmetric";
  if (!symmetric && fields[4] != "general")
    r.fail("unsupported MatrixMarket symmetry '" + fields[4] + "'");

  std::string line;
  if (!r.next(line)) r.fail("missing size line");
  const auto size = split_ws(line);
  if (size.size() != 3) r.fail("size line must be 'rows cols nnz'");
  const long rows = parse_int(r, size[0]), cols = parse_int(r, size[1]), nnz = parse_int(r, size[2]);
  if (rows < 0 || cols < 0 || nnz < 0) r.fail("negative size");
  if (symmetric && rows != cols) r.fail("symmetric matrix must be square");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long k = 0; k < nnz; ++k) {
    if (!r.next(line)) r.fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
    const auto tok = split_ws(line);
    if (tok.size() != 3) r.fail("entry must be 'row col value'");
    const long i = parse_int(r, tok[0]), j = parse_int(r, tok[1]);
    const double v = parse_real(r, tok[2]);
    if (i < 1 || i > rows || j < 1 || j > cols)
      r.fail("index (" + tok[0] + ", " + tok[1] + ") out of range for " +
             describe_shape(rows, cols) + " matrix");
    triplets.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) triplets.emplace_back(j - 1, i - 1, v);
  }
  if (r.next(line)) r.fail("unexpected data after " + std::to_string(nnz) + " entries");
  SparseMatrix a(rows, cols);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

Matrix parse_grid(LineReader& r, const std::string& size_line) {
  const auto size = split_ws(size_line);
  if (size.size() != 2) r.fail("dense matrix must start with 'rows cols'");
  const long rows = parse_int(r, size[0]), cols = parse_int(r, size[1]);
  if (rows < 0 || cols < 0) r.fail("negative size");
  Matrix a(rows, cols);
  long filled = 0;
  const long total = rows * cols;
  std::string line;
  while (r.next(line)) {
    for (const auto& tok : split_ws(line)) {
      if (filled >= total) r.fail("more than " + std::to_string(total) + " values");
      a(filled / cols, filled % cols) = parse_real(r, tok);
      ++filled;
    }
  }
  if (filled != total)
    r.fail("expected " + std::to_string(total) + " values, found " + std::to_string(filled));
  return a;
}

std::variant<SparseMatrix, Matrix> parse_any(std::istream& in, const std::string& source) {
  LineReader r{in, source};
  std::string line;
  if (!r.next(line, false)) r.fail("empty matrix file");
  const auto first = line.find_first_not_of(" \t");
  if (line.compare(first, 14, "%%MatrixMarket") == 0) return parse_coordinate(r, line.substr(first));
  if (line[first] == '%') {
    if (!r.next(line)) r.fail("empty matrix file");
  }
  return parse_grid(r, line);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

}  // namespace

LinearMap parse_linear_map(std::istream& in, const std::string& source) {
  auto any = parse_any(in, source);
  if (auto* s = std::get_if<SparseMatrix>(&any)) return LinearMap::sparse(std::move(*s));
  return LinearMap::dense(std::get<Matrix>(std::move(any)));
}

LinearMap read_linear_map(const std::string& path) {
  auto in = open_input(path);
  return parse_linear_map(in, path);
}

Matrix parse_dense_matrix(std::istream& in, const std::string& source) {
  auto any = parse_any(in, source);
  if (auto* s = std::get_if<SparseMatrix>(&any)) return Matrix(*s);
  return std::get<Matrix>(std::move(any));
}

Matrix read_dense_matrix(const std::string& path) {
  auto in = open_input(path);
  return parse_dense_matrix(in, path);
}

Vector read_vector(const std::string& path) {
  const Matrix a = read_dense_matrix(path);
  if (a.cols() == 1) return a.col(0);
  if (a.rows() == 1) return a.row(0).transpose();
  throw ParseError(path, 0, "expected a vector, found a " + describe_shape(a.rows(), a.cols()) +
                                " matrix");
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_dense_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out << (j ? " " : "") << format_double(a(i, j));
    out << '\n';
  }
}

void write_vector(const std::string& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_dense_matrix(out, Matrix(v));
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  for (Index i = 0; i < a.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(a, i); it; ++it)
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_double(it.value()) << '\n';
}

}  // namespace lagnewton
