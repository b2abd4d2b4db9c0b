#include "qpdas/solver.hpp"

#include <algorithm>
#include <chrono>

namespace qpdas {

namespace {

using Clock = std::chrono::steady_clock;

double
seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

SolveResult
solve(const PrimalQP& qp, const SolverConfig& cfg, bool dual_only)
{
  SolveResult out;
  auto t0 = Clock::now();
  DualProblem dp = build_dual(qp);
  out.timings.build_dual = seconds_since(t0);

  t0 = Clock::now();
  out.dual = solve_dual(dp.dual, cfg);
  out.timings.solve_dual = seconds_since(t0);

  if (!dual_only) {
    t0 = Clock::now();
    out.primal = recover_primal(qp, dp.pfactor, out.dual.mu_star);
    out.timings.recover_primal = seconds_since(t0);
  }
  return out;
}

double
max_kkt_residual(const SolveResult& result)
{
  if (!result.primal)
    return result.dual.kkt_residual;
  const PrimalSolution& p = *result.primal;
  return std::max({ p.stationarity_residual,
                    p.primal_residuals.eq_violation,
                    p.primal_residuals.ineq_violation,
                    p.complementarity,
                    result.dual.residuals.dual_feasibility });
}

} // namespace qpdas
