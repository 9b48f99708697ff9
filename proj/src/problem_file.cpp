#include "lagnewton/problem_file.hpp"

#include "lagnewton/errors.hpp"
#include "lagnewton/matrix_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace lagnewton {

namespace {

using nlohmann::json;

struct Context {
  std::string source;
  std::filesystem::path base_dir;

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError(source, 0, field + ": " + what);
  }

  std::string resolve(const std::string& p) const {
    std::filesystem::path path(p);
    if (path.is_relative()) path = base_dir / path;
    return path.string();
  }
};

const json& require(const Context& ctx, const json& obj, const std::string& key,
                    const std::string& field) {
  if (!obj.is_object()) ctx.fail(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) ctx.fail(field + "." + key, "missing");
  return *it;
}

std::string require_string(const Context& ctx, const json& obj, const std::string& key,
                           const std::string& field) {
  const json& v = require(ctx, obj, key, field);
  if (!v.is_string()) ctx.fail(field + "." + key, "expected a string");
  return v.get<std::string>();
}

double to_real(const Context& ctx, const json& v, const std::string& field, double null_value) {
  if (v.is_null()) return null_value;
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
  }
  ctx.fail(field, "expected a number");
}

double require_number(const Context& ctx, const json& obj, const std::string& key,
                      const std::string& field) {
  const json& v = require(ctx, obj, key, field);
  if (!v.is_number()) ctx.fail(field + "." + key, "expected a number");
  return v.get<double>();
}

Vector to_vector(const Context& ctx, const json& v, const std::string& field, double null_value) {
  if (!v.is_array()) ctx.fail(field, "expected an array");
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k)
    out[static_cast<Index>(k)] = to_real(ctx, v[k], field + "[" + std::to_string(k) + "]", null_value);
  return out;
}

// Scalar broadcast or array of length n.
Vector scalar_or_vector(const Context& ctx, const json& params, const std::string& key, Index n,
                        double fallback, const std::string& field) {
  auto it = params.find(key);
  if (it == params.end()) return Vector::Constant(n, fallback);
  if (it->is_number()) return Vector::Constant(n, it->get<double>());
  Vector v = to_vector(ctx, *it, field + "." + key, 0.0);
  if (v.size() != n)
    throw DimensionError(field + "." + key + " has length " + std::to_string(v.size()) +
                         " but the objective has dimension " + std::to_string(n));
  return v;
}

std::shared_ptr<const SmoothObjective> load_objective(const Context& ctx, const json& obj) {
  const std::string kind = require_string(ctx, obj, "kind", "objective");
  if (kind == "quadratic") {
    const Matrix a = read_dense_matrix(ctx.resolve(require_string(ctx, obj, "A_path", "objective")));
    const Vector b = to_vector(ctx, require(ctx, obj, "b", "objective"), "objective.b", 0.0);
    if (a.rows() != a.cols())
      throw DimensionError("objective.A_path: A must be square, got " +
                           describe_shape(a.rows(), a.cols()));
    if (a.rows() != b.size())
      throw DimensionError("objective: A is " + describe_shape(a.rows(), a.cols()) +
                           " but b has length " + std::to_string(b.size()));
    try {
      return std::make_shared<QuadraticObjective>(a, b);
    } catch (const ParameterError& e) {
      ctx.fail("objective.A_path", e.what());
    }
  }
  if (kind == "builtin") {
    const std::string name = require_string(ctx, obj, "name", "objective");
    const json params = obj.contains("params") ? obj.at("params") : json::object();
    if (!params.is_object()) ctx.fail("objective.params", "expected an object");
    if (name == "softplus") {
      const double nd = require_number(ctx, params, "n", "objective.params");
      if (nd < 1 || nd != std::floor(nd)) ctx.fail("objective.params.n", "expected a positive integer");
      const Index n = static_cast<Index>(nd);
      const double mu = params.value("mu", 1.0);
      const double weight = params.value("weight", 1.0);
      return std::make_shared<SoftplusObjective>(
          mu, weight, scalar_or_vector(ctx, params, "shift", n, 0.0, "objective.params"),
          scalar_or_vector(ctx, params, "b", n, 0.0, "objective.params"));
    }
    ctx.fail("objective.name", "unknown builtin '" + name + "'");
  }
  ctx.fail("objective.kind", "expected 'quadratic' or 'builtin', got '" + kind + "'");
}

ProxFunction load_phi(const Context& ctx, const json& obj, const LinearMap& e) {
  const Index m = e.rows();
  const std::string kind = require_string(ctx, obj, "kind", "phi");
  if (kind == "box") {
    const double inf = std::numeric_limits<double>::infinity();
    const Vector lower = to_vector(ctx, require(ctx, obj, "lower", "phi"), "phi.lower", -inf);
    const Vector upper = to_vector(ctx, require(ctx, obj, "upper", "phi"), "phi.upper", inf);
    if (lower.size() != m)
      throw DimensionError(ctx.source + ": phi.lower has shape " + describe_shape(lower.size(), 1) +
                           " but E is " + describe_shape(e.rows(), e.cols()));
    if (upper.size() != m)
      throw DimensionError(ctx.source + ": phi.upper has shape " + describe_shape(upper.size(), 1) +
                           " but E is " + describe_shape(e.rows(), e.cols()));
    try {
      return ProxFunction::box(lower, upper);
    } catch (const ParameterError& e) {
      ctx.fail("phi", e.what());
    }
  }
  if (kind == "l1") {
    const double alpha = require_number(ctx, obj, "alpha", "phi");
    if (!(alpha > 0)) ctx.fail("phi.alpha", "must be positive");
    return ProxFunction::l1(alpha);
  }
  ctx.fail("phi.kind", "expected 'box' or 'l1', got '" + kind + "'");
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

LoadedProblem parse_problem(const std::string& text, const std::string& source,
                            const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(source, line_of_byte(text, byte), e.what());
  }
  const Context ctx{source, base_dir};
  if (!doc.is_object()) ctx.fail("<root>", "expected an object");

  auto smooth = load_objective(ctx, require(ctx, doc, "objective", "<root>"));
  const Index n = smooth->dim();

  const std::string e_path = require_string(ctx, doc, "E_path", "<root>");
  LinearMap e = e_path == "identity" ? LinearMap::identity(n) : read_linear_map(ctx.resolve(e_path));
  if (e.cols() != n)
    throw DimensionError(ctx.source + ": E_path: E is " + describe_shape(e.rows(), e.cols()) +
                         " but the objective has shape " + describe_shape(n, 1));

  ProxFunction phi = load_phi(ctx, require(ctx, doc, "phi", "<root>"), e);

  std::optional<double> c, tol;
  std::optional<int> max_iter;
  if (auto it = doc.find("defaults"); it != doc.end()) {
    if (!it->is_object()) ctx.fail("defaults", "expected an object");
    if (it->contains("c")) c = require_number(ctx, *it, "c", "defaults");
    if (it->contains("tol")) tol = require_number(ctx, *it, "tol", "defaults");
    if (it->contains("max_iter")) {
      const double v = require_number(ctx, *it, "max_iter", "defaults");
      if (v < 0 || v != std::floor(v)) ctx.fail("defaults.max_iter", "expected a nonnegative integer");
      max_iter = static_cast<int>(v);
    }
    if (c && !(*c > 0)) ctx.fail("defaults.c", "must be positive");
    if (tol && !(*tol > 0)) ctx.fail("defaults.tol", "must be positive");
  }

  return LoadedProblem{Problem(std::move(smooth), std::move(e), std::move(phi), c.value_or(1.0)),
                       c, tol, max_iter};
}

LoadedProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open problem file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_problem(buffer.str(), path, dir.empty() ? "." : dir.string());
}

}  // namespace lagnewton
