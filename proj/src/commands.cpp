#include "lagnewton/commands.hpp"

#include "lagnewton/errors.hpp"
#include "lagnewton/instances.hpp"
#include "lagnewton/lagrangian.hpp"
#include "lagnewton/matrix_io.hpp"
#include "lagnewton/newton.hpp"
#include "lagnewton/oracle.hpp"
#include "lagnewton/problem_file.hpp"
#include "lagnewton/report_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace lagnewton::cli {

namespace {

// CLI11 consumes argument vectors in reverse order.
void parse_args(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Vector load_start(const std::string& source, Index size, const char* what) {
  if (source == "zeros") return Vector::Zero(size);
  Vector v = read_vector(source);
  if (v.size() != size)
    throw DimensionError(std::string(what) + " has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(size));
  return v;
}

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return kConverged;
    case SolveStatus::MaxIterations:
      return kMaxIterations;
    case SolveStatus::SingularSystem:
      return kSingularSystem;
    case SolveStatus::Diverged:
      return kDiverged;
  }
  return kInputError;
}

// Runs `body`, mapping input problems to exit code 1.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct BenchRow {
  std::string id;
  Index n = 0;
  Index m = 0;
  int iterations = 0;
  double final_residual = 0.0;
  double last_ratio = 0.0;
  double agreement = 0.0;
  double seconds = 0.0;
  SolveStatus status = SolveStatus::MaxIterations;
};

double agreement_error(const Vector& x, const Vector& reference) {
  const double scale = 1.0 + (reference.size() ? reference.lpNorm<Eigen::Infinity>() : 0.0);
  return (x - reference).lpNorm<Eigen::Infinity>() / scale;
}

}  // namespace

int run_solve(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    CLI::App app("Solve min f(x) + phi(Ex) by the linear Newton method", "lagnewton solve");
    std::string problem_path, formulation_name, tie_name = "zero", x0 = "zeros", lambda0 = "zeros";
    std::string output = "-", x_out, lambda_out;
    double c = 1.0, tol = 1e-10, warm_c = 1.0;
    int max_iter = 100, warm = 0;
    app.add_option("--problem", problem_path, "Problem file (JSON)")->required();
    auto* c_opt = app.add_option("--c", c, "Penalty parameter");
    auto* tol_opt = app.add_option("--tol", tol, "Residual tolerance (max-norm)");
    auto* iter_opt = app.add_option("--max-iter", max_iter, "Newton iteration budget");
    app.add_option("--formulation", formulation_name, "direction | fullstep | activeset")
        ->check(CLI::IsMember({"direction", "fullstep", "activeset"}));
    app.add_option("--tie", tie_name, "Jacobian value at kinks: zero | one")
        ->check(CLI::IsMember({"zero", "one"}));
    app.add_option("--warm-start", warm, "First-order steps before Newton");
    app.add_option("--warm-start-c", warm_c, "Penalty for the warm-start steps");
    app.add_option("--x0", x0, "Initial x (vector file or 'zeros')");
    app.add_option("--lambda0", lambda0, "Initial lambda (vector file or 'zeros')");
    app.add_option("--output", output, "Report path, '-' for stdout; '.json' selects JSON");
    app.add_option("--x-out", x_out, "Write the final x as a vector file");
    app.add_option("--lambda-out", lambda_out, "Write the final lambda as a vector file");
    try {
      parse_args(app, args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    }

    const LoadedProblem loaded = load_problem(problem_path);
    const Problem& p = loaded.problem;

    NewtonConfig cfg;
    cfg.c = c_opt->count() ? c : loaded.c.value_or(1.0);
    cfg.tol = tol_opt->count() ? tol : loaded.tol.value_or(1e-10);
    cfg.max_iter = iter_opt->count() ? max_iter : loaded.max_iter.value_or(100);
    cfg.tie_rule = tie_name == "one" ? TieRule::PreferOne : TieRule::PreferZero;
    cfg.warm_start_steps = warm;
    cfg.warm_start_c = warm_c;
    // Both supported phi kinds have an active-set specialization.
    cfg.formulation = formulation_name == "direction"  ? Formulation::Direction
                      : formulation_name == "fullstep" ? Formulation::FullStep
                                                       : Formulation::ActiveSet;
    cfg.validate();

    const PrimalDual start{load_start(x0, p.n(), "--x0"), load_start(lambda0, p.m(), "--lambda0")};
    const SolveReport report = solve(p, start, cfg);

    ReportContext ctx;
    ctx.formulation = cfg.formulation;
    ctx.c = cfg.c;
    ctx.tol = cfg.tol;
    ctx.n = p.n();
    ctx.m = p.m();
    ctx.kkt = check_optimality_kkt3(p.with_penalty(cfg.c), report.final_point());

    auto emit = [&](std::ostream& os) {
      if (ends_with(output, ".json"))
        write_report_json(os, report, ctx);
      else
        write_report_text(os, report, ctx);
    };
    if (output == "-") {
      emit(out);
    } else {
      std::ofstream file(output);
      if (!file) throw std::runtime_error("cannot write " + output);
      emit(file);
    }
    if (!x_out.empty()) write_vector(x_out, report.final_point().x);
    if (!lambda_out.empty()) write_vector(lambda_out, report.final_point().lambda);
    return exit_code_for(report.status);
  });
}

int run_check(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    CLI::App app("Certify (x, lambda) against the optimality system", "lagnewton check");
    std::string problem_path, x_path, lambda_path;
    double c = 1.0, tol = 1e-8;
    app.add_option("--problem", problem_path, "Problem file (JSON)")->required();
    app.add_option("--x", x_path, "Primal vector file")->required();
    app.add_option("--lambda", lambda_path, "Multiplier vector file")->required();
    auto* c_opt = app.add_option("--c", c, "Penalty parameter");
    app.add_option("--tol", tol, "Certification tolerance");
    try {
      parse_args(app, args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    }
    if (!(tol > 0)) throw ParameterError("--tol must be positive");

    const LoadedProblem loaded = load_problem(problem_path);
    const double penalty = c_opt->count() ? c : loaded.c.value_or(1.0);
    const Problem p = loaded.problem.with_penalty(penalty);
    const PrimalDual pt{read_vector(x_path), read_vector(lambda_path)};
    require_consistent(p, pt);

    const KktResiduals kkt = check_optimality_kkt3(p, pt);
    bool ok = kkt.stationarity <= tol && kkt.feasibility <= tol;
    out << "c: " << format_double(penalty) << '\n';
    out << "tol: " << format_double(tol) << '\n';
    out << "kkt_stationarity: " << format_double(kkt.stationarity) << '\n';
    out << "kkt_feasibility: " << format_double(kkt.feasibility) << '\n';
    for (double cc : {0.5, 1.0, 10.0}) {
      const double r = residual_norm(p.with_penalty(cc), pt);
      ok = ok && r <= tol;
      out << "residual_at_c_" << format_double(cc) << ": " << format_double(r) << '\n';
    }
    out << "certified: " << (ok ? "yes" : "no") << '\n';
    return ok ? kConverged : kCertificationFailed;
  });
}

int run_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    CLI::App app("Compare Newton with the reference solvers", "lagnewton bench");
    std::string suite, sizes_arg, seeds_arg = "1", output = "-";
    double c = 1.0, tol = 1e-10;
    int warm = 10;
    app.add_option("--suite", suite, "qp-box | qp-l1 | toy")
        ->required()
        ->check(CLI::IsMember({"qp-box", "qp-l1", "toy"}));
    app.add_option("--sizes", sizes_arg, "Comma-separated NxM sizes, e.g. 200x100,200x300");
    app.add_option("--seeds", seeds_arg, "Comma-separated seeds");
    app.add_option("--output", output, "Table path, '-' for stdout");
    app.add_option("--c", c, "Newton penalty parameter");
    app.add_option("--tol", tol, "Newton residual tolerance");
    app.add_option("--warm-start", warm, "First-order steps before Newton");
    try {
      parse_args(app, args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    }

    NewtonConfig cfg;
    cfg.c = c;
    cfg.tol = tol;
    cfg.formulation = Formulation::ActiveSet;
    cfg.warm_start_steps = warm;
    cfg.validate();

    std::vector<BenchRow> rows;
    auto run_one = [&](const std::string& id, const Problem& p, const Vector& reference_x,
                       const NewtonConfig& ncfg) {
      BenchRow row;
      row.id = id;
      row.n = p.n();
      row.m = p.m();
      const auto t0 = std::chrono::steady_clock::now();
      const SolveReport rep = solve(p, PrimalDual::zeros(p), ncfg);
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.iterations = rep.iterations;
      row.final_residual = rep.final_residual();
      row.last_ratio = rep.last_ratio();
      row.status = rep.status;
      row.agreement = agreement_error(rep.final_point().x, reference_x);
      rows.push_back(row);
    };

    if (suite == "toy") {
      GridSpec grid{Vector::Constant(1, -4.0), Vector::Constant(1, 4.0), 8001};
      NewtonConfig toy_cfg = cfg;
      toy_cfg.warm_start_steps = 0;
      for (const auto& [id, p] : {std::pair{std::string("toy-box"), make_toy_box(c)},
                                  std::pair{std::string("toy-l1"), make_toy_l1(c)}}) {
        const PrimalDual ref = brute_force_kkt(p, grid);
        run_one(id, p, ref.x, toy_cfg);
      }
    } else {
      const auto size_items = split_list(sizes_arg);
      const auto seed_items = split_list(seeds_arg);
      if (size_items.empty()) throw ParameterError("--sizes must list at least one NxM size");
      if (seed_items.empty()) throw ParameterError("--seeds must list at least one seed");
      for (const auto& item : size_items) {
        const auto x = item.find('x');
        if (x == std::string::npos) throw ParameterError("size '" + item + "' is not NxM");
        const Index n = std::stol(item.substr(0, x));
        const Index m = std::stol(item.substr(x + 1));
        if (n < 1 || m < 1) throw ParameterError("size '" + item + "' must be positive");
        for (const auto& seed_str : seed_items) {
          const auto seed = static_cast<std::uint64_t>(std::stoull(seed_str));
          const Problem p = suite == "qp-box" ? make_qp_box(n, m, seed, c) : make_qp_l1(n, m, seed, c);
          OracleConfig ocfg;
          const SolveReport oracle = alm_first_order(p, PrimalDual::zeros(p), ocfg);
          const std::string id = suite + "-n" + std::to_string(n) + "-m" + std::to_string(m) +
                                 "-s" + seed_str;
          run_one(id, p, oracle.final_point().x, cfg);
        }
      }
    }

    std::ofstream file;
    std::ostream* os = &out;
    if (output != "-") {
      file.open(output);
      if (!file) throw std::runtime_error("cannot write " + output);
      os = &file;
    }
    *os << "id\tn\tm\tnewton_iterations\tfinal_residual\tlast_ratio\tagreement\twall_time_s\tstatus\n";
    bool ok = true;
    for (const auto& r : rows) {
      *os << r.id << '\t' << r.n << '\t' << r.m << '\t' << r.iterations << '\t'
          << format_double(r.final_residual) << '\t' << format_double(r.last_ratio) << '\t'
          << format_double(r.agreement) << '\t' << r.seconds << '\t' << to_string(r.status) << '\n';
      ok = ok && r.agreement <= 1e-6;
    }
    return ok ? kConverged : kAgreementFailed;
  });
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::string usage =
      "usage: lagnewton <solve|check|bench> [options]\n"
      "  solve   run the linear Newton method on a problem file\n"
      "  check   certify a primal-dual pair\n"
      "  bench   compare Newton with reference solvers on generated instances\n"
      "Run 'lagnewton <command> --help' for options.\n";
  if (argc < 2) {
    err << usage;
    return kInputError;
  }
  const std::string cmd = argv[1];
  std::vector<std::string> rest(argv + 2, argv + argc);
  if (cmd == "solve") return run_solve(rest, out, err);
  if (cmd == "check") return run_check(rest, out, err);
  if (cmd == "bench") return run_bench(rest, out, err);
  if (cmd == "--help" || cmd == "-h") {
    out << usage;
    return 0;
  }
  err << "unknown command '" << cmd << "'\n" << usage;
  return kInputError;
}

}  // namespace lagnewton::cli
