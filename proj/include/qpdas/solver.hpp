#ifndef QPDAS_SOLVER_HPP
#define QPDAS_SOLVER_HPP

#include "qpdas/active_set.hpp"
#include "qpdas/transform.hpp"

#include <optional>

namespace qpdas {

/// Wall-clock seconds per phase. Factorizing P is counted in build_dual.
struct Timings
{
  double build_dual = 0.0;
  double solve_dual = 0.0;
  double recover_primal = 0.0;

  double dual_only() const { return build_dual + solve_dual; }
  double total() const { return build_dual + solve_dual + recover_primal; }
};

struct SolveResult
{
  SolveReport dual;
  /// Empty when the solve ran in dual-only mode.
  std::optional<PrimalSolution> primal;
  Timings timings;
};

/// Builds the dual, runs the active-set method and, unless `dual_only`,
/// recovers x. Throws UnboundedDual when the primal is infeasible.
SolveResult
solve(const PrimalQP& qp, const SolverConfig& cfg = {}, bool dual_only = false);

/// Largest KKT residual of a result: primal stationarity, feasibility,
/// complementarity and multiplier sign when x was recovered, the dual
/// residuals otherwise.
double
max_kkt_residual(const SolveResult& result);

} // namespace qpdas

#endif // QPDAS_SOLVER_HPP
