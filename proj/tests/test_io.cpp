#include "support.hpp"

#include "lagnewton/errors.hpp"
#include "lagnewton/matrix_io.hpp"
#include "lagnewton/newton.hpp"
#include "lagnewton/problem_file.hpp"
#include "lagnewton/report_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lagnewton;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path;
  ScratchDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("lagnewton_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

LinearMap parse_map(const std::string& text) {
  std::istringstream in(text);
  return parse_linear_map(in, "mem");
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_map(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kToyA = "1 1\n1\n";

}  // namespace

TEST_CASE("dense matrices") {
  const LinearMap e = parse_map("# comment\n2 3\n1 2 3\n\n4 5 6\n");
  CHECK_FALSE(e.is_sparse());
  CHECK(e.to_dense() == (Matrix(2, 3) << 1, 2, 3, 4, 5, 6).finished());
  CHECK(parse_error_line("2 2\n1 2\n3\n") == 3);
  CHECK(parse_error_line("2 2\n1 2\n3 4\n5 6\n") == 4);
  CHECK(parse_error_line("2 2\n1 x\n3 4\n") == 2);
  CHECK(parse_error_line("2 2\n1 2\n") > 0);
}

TEST_CASE("coordinate matrices") {
  const LinearMap e = parse_map(
      "%%MatrixMarket matrix coordinate real general\n% note\n2 3 3\n1 1 1.5\n2 3 -2\n1 2 4\n");
  CHECK(e.is_sparse());
  CHECK(e.to_dense() == (Matrix(2, 3) << 1.5, 4, 0, 0, 0, -2).finished());

  const LinearMap s = parse_map("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n2 1 3\n");
  CHECK(s.to_dense() == (Matrix(2, 2) << 1, 3, 3, 0).finished());

  CHECK(parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n3 1 1\n") == 4);
  CHECK(parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 0 1\n") == 4);
  CHECK(parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n") > 0);
  CHECK(parse_error_line("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n") == 1);
}

TEST_CASE("write then read round trips exactly") {
  ScratchDir dir;
  std::mt19937_64 rng(61);
  const Vector v = gaussian(rng, 7, 1e3);
  const std::string path = (dir.path / "v.txt").string();
  write_vector(path, v);
  CHECK(read_vector(path) == v);

  const Matrix a = gaussian(rng, 4, 3, 1.0);
  std::ostringstream dense;
  write_dense_matrix(dense, a);
  std::istringstream din(dense.str());
  CHECK(parse_dense_matrix(din, "mem") == a);

  Matrix sp_src = a;
  sp_src(1, 1) = 0;
  const SparseMatrix sp = sp_src.sparseView();
  std::ostringstream mm;
  write_matrix_market(mm, sp);
  CHECK(parse_map(mm.str()).to_dense() == sp_src);

  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("problem files") {
  ScratchDir dir;
  dir.write("a.txt", kToyA);
  const LoadedProblem lp = parse_problem(R"({
      "objective": {"kind": "quadratic", "A_path": "a.txt", "b": [2]},
      "E_path": "identity",
      "phi": {"kind": "l1", "alpha": 1},
      "defaults": {"c": 2.5, "max_iter": 7}})",
                                         "toy.json", dir.path.string());
  CHECK(lp.problem.n() == 1);
  CHECK(lp.c == 2.5);
  CHECK(lp.max_iter == 7);
  CHECK_FALSE(lp.tol.has_value());
  const SolveReport r = solve(lp.problem, PrimalDual::zeros(lp.problem), NewtonConfig{});
  CHECK(r.converged());
  CHECK(r.final_point().x(0) == doctest::Approx(1.0).epsilon(1e-12));

  // Box bounds accept numbers, "inf" strings and null.
  dir.write("e.mtx", "%%MatrixMarket matrix coordinate real general\n2 1 2\n1 1 1\n2 1 -1\n");
  const LoadedProblem boxed = parse_problem(R"({
      "objective": {"kind": "quadratic", "A_path": "a.txt", "b": [2]},
      "E_path": "e.mtx",
      "phi": {"kind": "box", "lower": ["-inf", null], "upper": [1, "inf"]}})",
                                            "box.json", dir.path.string());
  CHECK(boxed.problem.m() == 2);
  CHECK(std::isinf(boxed.problem.phi().lower()(0)));
  CHECK(std::isinf(boxed.problem.phi().lower()(1)));

  const LoadedProblem sp = parse_problem(R"({
      "objective": {"kind": "builtin", "name": "softplus", "params": {"n": 3, "shift": 0.5}},
      "E_path": "identity", "phi": {"kind": "l1", "alpha": 0.1}})",
                                         "sp.json", dir.path.string());
  CHECK(sp.problem.n() == 3);
  CHECK_FALSE(sp.problem.smooth().is_quadratic());
}

TEST_CASE("problem file errors name the field") {
  ScratchDir dir;
  dir.write("a.txt", kToyA);
  dir.write("e.mtx", "%%MatrixMarket matrix coordinate real general\n2 1 2\n1 1 1\n2 1 -1\n");
  dir.write("asym.txt", "2 2\n1 0.5\n0 1\n");
  dir.write("bad.mtx", "%%MatrixMarket matrix coordinate real general\n2 1 2\n1 1 1\n5 1 -1\n");

  auto message = [&](const std::string& text) -> std::string {
    try {
      parse_problem(text, "p.json", dir.path.string());
    } catch (const std::exception& e) {
      return e.what();
    }
    return "";
  };
  const std::string quad = R"("objective": {"kind": "quadratic", "A_path": "a.txt", "b": [2]})";

  // m x n E with m + 1 bounds.
  CHECK_THROWS_AS(parse_problem("{" + quad + R"(, "E_path": "e.mtx",
      "phi": {"kind": "box", "lower": [0, 0, 0], "upper": [1, 1, 1]}})", "p.json", dir.path.string()),
                  DimensionError);
  const std::string dim_msg = message("{" + quad + R"(, "E_path": "e.mtx",
      "phi": {"kind": "box", "lower": [0, 0, 0], "upper": [1, 1, 1]}})");
  CHECK(dim_msg.find("2x1") != std::string::npos);
  CHECK(dim_msg.find('3') != std::string::npos);

  CHECK(message("{" + quad + R"(, "E_path": "identity"})").find("phi") != std::string::npos);
  CHECK(message("{" + quad + R"(, "E_path": "identity", "phi": {"kind": "l1"}})").find("alpha") != std::string::npos);
  CHECK(message("{" + quad + R"(, "E_path": "identity", "phi": {"kind": "ring"}})").find("phi") != std::string::npos);

  const std::string asym = message(R"({"objective": {"kind": "quadratic", "A_path": "asym.txt", "b": [1, 1]},
      "E_path": "identity", "phi": {"kind": "l1", "alpha": 1}})");
  CHECK(asym.find("A_path") != std::string::npos);
  CHECK(asym.find("symmetric") != std::string::npos);
  CHECK_THROWS_AS(QuadraticObjective((Matrix(2, 2) << 1, 0.5, 0, 1).finished(), Vector::Zero(2)), ParameterError);

  try {
    parse_problem("{" + quad + R"(, "E_path": "bad.mtx", "phi": {"kind": "l1", "alpha": 1}})", "p.json",
                  dir.path.string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }

  try {
    parse_problem("{\n  \"objective\": {\n    \"kind\": ,\n", "p.json", dir.path.string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(load_problem((dir.path / "missing.json").string()), std::exception);
}

TEST_CASE("report writers") {
  const Problem p = scalar_problem(1.0, 2.0, ProxFunction::l1(1.0));
  const SolveReport r = solve(p, point(0, 0), NewtonConfig{});
  ReportContext ctx;
  ctx.formulation = Formulation::Direction;
  ctx.n = 1;
  ctx.m = 1;
  ctx.kkt = check_optimality_kkt3(p, r.final_point());

  std::ostringstream text;
  write_report_text(text, r, ctx);
  CHECK(text.str().find("status: Converged") != std::string::npos);
  CHECK(text.str().find("iter 0 residual=") != std::string::npos);
  CHECK(text.str().find("\nx: 1\n") != std::string::npos);

  std::ostringstream js;
  write_report_json(js, r, ctx);
  const nlohmann::json doc = nlohmann::json::parse(js.str());
  CHECK(doc.at("status") == "Converged");
  CHECK(doc.at("x").at(0).get<double>() == 1.0);
  CHECK(doc.at("residual_norms").size() == r.residual_norms.size());
}
