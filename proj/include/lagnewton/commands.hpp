#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lagnewton::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kConverged = 0,
  kInputError = 1,
  kMaxIterations = 2,
  kSingularSystem = 3,
  kDiverged = 4,
  kCertificationFailed = 5,
  kAgreementFailed = 6,
};

/// `solve`: run the Newton iteration on a problem file and emit a report.
int run_solve(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `check`: certify a given (x, lambda) against the optimality system.
int run_check(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `bench`: Newton against the reference solvers on generated instances.
int run_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dispatches argv[1] to a subcommand.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lagnewton::cli
