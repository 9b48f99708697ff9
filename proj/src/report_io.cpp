#include "lagnewton/report_io.hpp"

#include "lagnewton/matrix_io.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>

namespace lagnewton {

namespace {

std::string join(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

void write_report_text(std::ostream& out, const SolveReport& report, const ReportContext& ctx) {
  out << "status: " << to_string(report.status) << '\n';
  out << "formulation: " << to_string(ctx.formulation) << '\n';
  out << "n: " << ctx.n << '\n';
  out << "m: " << ctx.m << '\n';
  out << "c: " << format_double(ctx.c) << '\n';
  out << "tol: " << format_double(ctx.tol) << '\n';
  out << "iterations: " << report.iterations << '\n';
  out << "final_residual: " << format_double(report.final_residual()) << '\n';
  out << "kkt_stationarity: " << format_double(ctx.kkt.stationarity) << '\n';
  out << "kkt_feasibility: " << format_double(ctx.kkt.feasibility) << '\n';
  if (!report.message.empty()) out << "message: " << report.message << '\n';
  for (std::size_t k = 0; k < report.residual_norms.size(); ++k) {
    out << "iter " << k << " residual=" << format_double(report.residual_norms[k]);
    out << " ratio=" << (k == 0 ? std::string("-") : format_double(report.ratios[k - 1]));
    out << " active=";
    if (k < report.active_set_history.size())
      out << report.active_set_history[k].size();
    else
      out << '-';
    out << '\n';
  }
  out << "x: " << join(report.final_point().x) << '\n';
  out << "lambda: " << join(report.final_point().lambda) << '\n';
}

void write_report_json(std::ostream& out, const SolveReport& report, const ReportContext& ctx) {
  nlohmann::json doc;
  doc["status"] = std::string(to_string(report.status));
  doc["formulation"] = std::string(to_string(ctx.formulation));
  doc["n"] = ctx.n;
  doc["m"] = ctx.m;
  doc["c"] = ctx.c;
  doc["tol"] = ctx.tol;
  doc["iterations"] = report.iterations;
  doc["final_residual"] = number_or_null(report.final_residual());
  doc["kkt"] = {{"stationarity", number_or_null(ctx.kkt.stationarity)},
                {"feasibility", number_or_null(ctx.kkt.feasibility)}};
  if (!report.message.empty()) doc["message"] = report.message;
  auto& norms = doc["residual_norms"] = nlohmann::json::array();
  for (double v : report.residual_norms) norms.push_back(number_or_null(v));
  auto& ratios = doc["ratios"] = nlohmann::json::array();
  for (double v : report.ratios) ratios.push_back(number_or_null(v));
  auto& sizes = doc["active_set_sizes"] = nlohmann::json::array();
  for (const auto& s : report.active_set_history) sizes.push_back(s.size());
  const PrimalDual& fin = report.final_point();
  doc["x"] = std::vector<double>(fin.x.data(), fin.x.data() + fin.x.size());
  doc["lambda"] = std::vector<double>(fin.lambda.data(), fin.lambda.data() + fin.lambda.size());
  out << doc.dump(2) << '\n';
}

}  // namespace lagnewton
