#include "lagnewton/report.hpp"

#include <limits>

namespace lagnewton {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::MaxIterations:
      return "MaxIterations";
    case SolveStatus::SingularSystem:
      return "SingularSystem";
    case SolveStatus::Diverged:
      return "Diverged";
  }
  return "Unknown";
}

double SolveReport::last_ratio() const {
  return ratios.empty() ? std::numeric_limits<double>::quiet_NaN() : ratios.back();
}

bool ratios_eventually_decreasing(const std::vector<double>& ratios) {
  if (ratios.empty()) return false;
  if (ratios.size() == 1) return true;
  return ratios[ratios.size() - 1] < ratios[ratios.size() - 2];
}

}  // namespace lagnewton
