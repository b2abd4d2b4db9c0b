#include "cli.hpp"

#include "qpdas/errors.hpp"
#include "qpdas/generators.hpp"
#include "qpdas/oracle.hpp"
#include "qpdas/problem_io.hpp"
#include "qpdas/solver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace qpdas::cli {

namespace {

using nlohmann::json;

struct SolveOptions
{
  std::string input;
  bool smartstart = true;
  double epsilon = kDefaultEpsilon;
  int max_iters = 0;
  std::string report;
  bool dual_only = false;
};

struct BenchOptions
{
  std::string problem;
  Index n = 1000;
  Index m = 50;
  std::uint64_t seed = 1;
  double active_fraction = 0.5;
  Index horizon = 30;
  std::vector<double> x0;
  int repeat = 1;
  double epsilon = kDefaultEpsilon;
  double kkt_tol = 1e-6;
  std::string report;
};

struct GenerateOptions
{
  std::string problem;
  std::string out;
  Index n = 1000;
  Index m = 50;
  Index m_eq = 2;
  std::uint64_t seed = 1;
  double active_fraction = 0.5;
  Index horizon = 30;
  std::vector<double> x0;
  bool degenerate = false;
};

bool
verbose()
{
  const char* v = std::getenv("QPDAS_VERBOSE");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

SolverConfig
make_config(bool smartstart, double epsilon, int max_iters, std::ostream& err)
{
  SolverConfig cfg;
  cfg.smartstart = smartstart;
  cfg.refine.epsilon = epsilon;
  cfg.max_outer = max_iters;
  if (verbose()) {
    cfg.observer = [&err](const IterationTrace& t) {
      err << "iter " << t.k << "  objective " << std::setprecision(12)
          << t.objective << "  |W| " << t.W.size() << '\n';
    };
  }
  return cfg;
}

void
write_json(const json& doc, const std::string& path, std::ostream& out)
{
  if (path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f)
    throw InvalidInput("cannot open report file " + path);
  f << doc.dump(2) << '\n';
}

json
failure_report(const std::string& status, const std::string& message)
{
  return { { "schema_version", kReportSchema },
           { "status", status },
           { "diagnostic", message } };
}

int
cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err)
{
  PrimalQP qp;
  try {
    qp = read_problem(o.input);
  } catch (const Error& e) {
    err << "qpdas: " << e.what() << '\n';
    if (!o.report.empty())
      write_json(failure_report("ParseError", e.what()), o.report, out);
    return kExitParse;
  }

  const SolverConfig cfg =
    make_config(o.smartstart, o.epsilon, o.max_iters, err);
  SolveResult result;
  try {
    result = solve(qp, cfg, o.dual_only);
  } catch (const UnboundedDual& e) {
    err << "qpdas: primal infeasible: " << e.what() << '\n';
    write_json(failure_report("PrimalInfeasible", e.what()), o.report, out);
    return kExitInfeasible;
  } catch (const InvalidProblem& e) {
    err << "qpdas: " << e.what() << '\n';
    write_json(failure_report("InvalidProblem", e.what()), o.report, out);
    return kExitParse;
  } catch (const Error& e) {
    err << "qpdas: " << e.what() << '\n';
    write_json(failure_report("NumericalFailure", e.what()), o.report, out);
    return kExitNumerical;
  }

  write_json(report_to_json(result), o.report, out);
  if (!o.report.empty()) {
    out << to_string(result.dual.status) << "  outer_iters "
        << result.dual.outer_iters << "  kkt " << std::scientific
        << std::setprecision(2) << max_kkt_residual(result) << '\n';
  }
  if (result.dual.status != SolveStatus::Optimal)
    err << "qpdas: " << to_string(result.dual.status) << ": "
        << result.dual.diagnostic << '\n';
  return exit_code(result.dual.status);
}

double
median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

struct BenchRow
{
  std::string method;
  double time = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  int iters = 0;
  int refine_min = 0;
  int refine_max = 0;
  double refine_mean = 0.0;
  Index active = 0;
  double kkt = 0.0;
};

PrimalQP
bench_problem(const BenchOptions& o, std::string& label)
{
  std::ostringstream s;
  if (o.problem == "mpc") {
    MpcSpec spec = MpcSpec::afti16(o.horizon);
    if (!o.x0.empty()) {
      if (static_cast<Index>(o.x0.size()) != spec.x0.size())
        throw InvalidInput("--x0 needs " + std::to_string(spec.x0.size()) +
                           " values");
      spec.x0 = Eigen::Map<const Vector>(o.x0.data(), spec.x0.size());
    }
    s << "AFTI-16 MPC, horizon " << o.horizon;
    label = s.str();
    return build_mpc(spec);
  }
  PolytopeSpec spec;
  spec.n = o.n;
  spec.m = o.m;
  spec.seed = o.seed;
  spec.target_active_fraction = o.active_fraction;
  s << "polytope projection, n " << o.n << ", m " << o.m << ", seed "
    << o.seed;
  label = s.str();
  return build_polytope(spec);
}

int
cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err)
{
  std::string label;
  PrimalQP qp;
  try {
    qp = bench_problem(o, label);
  } catch (const Error& e) {
    err << "qpdas: " << e.what() << '\n';
    return kExitParse;
  }

  std::vector<BenchRow> rows;
  json reports = json::array();
  int code = kExitOptimal;
  double worst_kkt = 0.0;

  for (bool smart : { false, true }) {
    const SolverConfig cfg = make_config(smart, o.epsilon, 0, err);
    std::vector<double> full_t;
    std::vector<double> dual_t;
    SolveResult last;
    try {
      for (int r = 0; r < o.repeat; ++r) {
        last = solve(qp, cfg, false);
        full_t.push_back(last.timings.total());
        dual_t.push_back(last.timings.dual_only());
      }
    } catch (const UnboundedDual& e) {
      err << "qpdas: primal infeasible: " << e.what() << '\n';
      return kExitInfeasible;
    } catch (const Error& e) {
      err << "qpdas: " << e.what() << '\n';
      return kExitNumerical;
    }
    const SolveReport& d = last.dual;
    const std::string suffix = smart ? ", smartstart" : "";
    BenchRow primal{ "primal" + suffix,
                     median(full_t),
                     d.status,
                     d.outer_iters,
                     d.refine_iters_min,
                     d.refine_iters_max,
                     d.refine_iters_mean,
                     d.working_set.m_in() - d.working_set.size(),
                     max_kkt_residual(last) };
    BenchRow dual = primal;
    dual.method = "dual" + suffix;
    dual.time = median(dual_t);
    dual.kkt = d.kkt_residual;
    rows.push_back(primal);
    rows.push_back(dual);
    worst_kkt = std::max({ worst_kkt, primal.kkt, dual.kkt });
    if (code == kExitOptimal)
      code = exit_code(d.status);

    json rep = report_to_json(last);
    rep["configuration"] = smart ? "smartstart" : "cold";
    rep["median_time"] = { { "dual_only", dual.time },
                           { "total", primal.time } };
    rep["repeat"] = o.repeat;
    reports.push_back(rep);
  }

  out << label << ", " << qp.n() << " variables, " << qp.m_eq()
      << " equalities, " << qp.m_in() << " inequalities\n";
  out << "median of " << o.repeat << " run" << (o.repeat == 1 ? "" : "s")
      << "\n\n";
  out << std::left << std::setw(22) << "Method" << std::right
      << std::setw(12) << "Time [s]" << std::setw(12) << "Iterations"
      << std::setw(14) << "Refinement" << std::setw(10) << "Active"
      << std::setw(12) << "KKT" << "  Status\n";
  for (const BenchRow& r : rows) {
    const std::string refine =
      std::to_string(r.refine_min) + "-" + std::to_string(r.refine_max);
    out << std::left << std::setw(22) << r.method << std::right
        << std::setw(12) << std::scientific << std::setprecision(3) << r.time
        << std::setw(12) << r.iters << std::setw(14) << refine
        << std::setw(10) << r.active << std::setw(12) << std::setprecision(2)
        << r.kkt << "  " << to_string(r.status) << '\n';
  }
  out << std::defaultfloat;

  const bool certified = worst_kkt <= o.kkt_tol;
  out << "\nKKT residuals " << (certified ? "certified" : "NOT certified")
      << ": max " << std::scientific << std::setprecision(2) << worst_kkt
      << (certified ? " <= " : " > ") << o.kkt_tol << std::defaultfloat
      << '\n';

  if (!o.report.empty()) {
    json doc = { { "benchmark", o.problem },
                 { "description", label },
                 { "kkt_certified", certified },
                 { "reports", reports } };
    write_json(doc, o.report, out);
  }
  if (code == kExitOptimal && !certified)
    code = kExitNumerical;
  return code;
}

int
cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err)
{
  PrimalQP qp;
  try {
    if (o.problem == "mpc") {
      MpcSpec spec = MpcSpec::afti16(o.horizon);
      if (!o.x0.empty()) {
        if (static_cast<Index>(o.x0.size()) != spec.x0.size())
          throw InvalidInput("--x0 needs " + std::to_string(spec.x0.size()) +
                             " values");
        spec.x0 = Eigen::Map<const Vector>(o.x0.data(), spec.x0.size());
      }
      qp = build_mpc(spec);
    } else if (o.problem == "polytope") {
      PolytopeSpec spec;
      spec.n = o.n;
      spec.m = o.m;
      spec.seed = o.seed;
      spec.target_active_fraction = o.active_fraction;
      qp = build_polytope(spec);
    } else {
      qp = random_qp(o.seed, o.n, o.m_eq, o.m, o.degenerate);
    }
  } catch (const Error& e) {
    err << "qpdas: " << e.what() << '\n';
    return kExitParse;
  }
  try {
    write_problem(qp, o.out);
  } catch (const Error& e) {
    err << "qpdas: " << e.what() << '\n';
    return kExitError;
  }
  out << "wrote " << o.out << ": " << qp.n() << " variables, " << qp.m_eq()
      << " equalities, " << qp.m_in() << " inequalities\n";
  return kExitOptimal;
}

} // namespace

int
exit_code(SolveStatus status)
{
  switch (status) {
    case SolveStatus::Optimal:
      return kExitOptimal;
    case SolveStatus::IterationLimit:
      return kExitIterationLimit;
    case SolveStatus::NumericalFailure:
      return kExitNumerical;
  }
  return kExitError;
}

int
run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Dual active-set solver for convex quadratic programs" };
  app.name("qpdas");
  app.require_subcommand(1);

  SolveOptions so;
  std::string smart = "on";
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
  solve_cmd->add_option("input", so.input, "Problem file")
    ->required()
    ->check(CLI::ExistingFile);
  solve_cmd
    ->add_option("--smartstart", smart, "Initial working set from h (on|off)")
    ->check(CLI::IsMember({ "on", "off" }))
    ->capture_default_str();
  solve_cmd
    ->add_option("--epsilon", so.epsilon, "Diagonal shift of the factor")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  solve_cmd
    ->add_option("--max-iters",
                 so.max_iters,
                 "Outer iteration cap (0: 10 x number of constraints)")
    ->check(CLI::NonNegativeNumber)
    ->capture_default_str();
  solve_cmd->add_option("--report", so.report, "Write the report here");
  solve_cmd->add_flag(
    "--dual-only", so.dual_only, "Skip primal recovery");

  BenchOptions bo;
  auto* bench_cmd =
    app.add_subcommand("bench", "Run a benchmark with and without smartstart");
  bench_cmd->add_option("problem", bo.problem, "mpc or polytope")
    ->required()
    ->check(CLI::IsMember({ "mpc", "polytope" }));
  bench_cmd->add_option("--n", bo.n, "Polytope dimension")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  bench_cmd->add_option("--m", bo.m, "Polytope constraint count")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  bench_cmd->add_option("--seed", bo.seed, "Polytope seed")
    ->capture_default_str();
  bench_cmd
    ->add_option("--active-fraction",
                 bo.active_fraction,
                 "Share of polytope constraints violated at c")
    ->check(CLI::Range(0.0, 1.0))
    ->capture_default_str();
  bench_cmd->add_option("--horizon", bo.horizon, "MPC horizon")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  bench_cmd->add_option("--x0", bo.x0, "MPC initial state")->delimiter(',');
  bench_cmd->add_option("--repeat", bo.repeat, "Runs per configuration")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  bench_cmd->add_option("--epsilon", bo.epsilon, "Diagonal shift")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  bench_cmd->add_option("--kkt-tol", bo.kkt_tol, "Certification threshold")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  bench_cmd->add_option("--report", bo.report, "Write the reports here");

  GenerateOptions go;
  auto* gen_cmd = app.add_subcommand("generate", "Write a problem file");
  gen_cmd->add_option("problem", go.problem, "mpc, polytope or random")
    ->required()
    ->check(CLI::IsMember({ "mpc", "polytope", "random" }));
  gen_cmd->add_option("--out", go.out, "Output path")->required();
  gen_cmd->add_option("--n", go.n, "Variables (polytope, random)")
    ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", go.m, "Inequalities (polytope, random)")
    ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--m-eq", go.m_eq, "Equalities (random)")
    ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", go.seed, "Seed (polytope, random)");
  gen_cmd->add_option("--active-fraction", go.active_fraction)
    ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--horizon", go.horizon, "MPC horizon")
    ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--x0", go.x0, "MPC initial state")->delimiter(',');
  gen_cmd->add_flag("--degenerate", go.degenerate, "Dependent rows (random)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOptimal : kExitParse;
  }

  try {
    if (*solve_cmd) {
      so.smartstart = smart == "on";
      return cmd_solve(so, out, err);
    }
    if (*bench_cmd)
      return cmd_bench(bo, out, err);
    return cmd_generate(go, out, err);
  } catch (const std::exception& e) {
    err << "qpdas: " << e.what() << '\n';
    return kExitError;
  }
}

} // namespace qpdas::cli
