#pragma once

#include "lagnewton/lagrangian.hpp"
#include "lagnewton/newton.hpp"
#include "lagnewton/report.hpp"

#include <iosfwd>

namespace lagnewton {

struct ReportContext {
  Formulation formulation = Formulation::ActiveSet;
  double c = 1.0;
  double tol = 1e-10;
  Index n = 0;
  Index m = 0;
  KktResiduals kkt{0.0, 0.0};
};

/// Key-value header, one "iter" record per iterate, then the final point.
/// Contains nothing time-dependent, so equal inputs give equal bytes.
void write_report_text(std::ostream& out, const SolveReport& report, const ReportContext& ctx);

/// The same content as a JSON document.
void write_report_json(std::ostream& out, const SolveReport& report, const ReportContext& ctx);

}  // namespace lagnewton
