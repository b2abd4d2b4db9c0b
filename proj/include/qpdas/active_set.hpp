#ifndef QPDAS_ACTIVE_SET_HPP
#define QPDAS_ACTIVE_SET_HPP

#include "qpdas/masked_factor.hpp"
#include "qpdas/refine.hpp"
#include "qpdas/types.hpp"
#include "qpdas/working_set.hpp"

#include <functional>
#include <optional>
#include <string>

namespace qpdas {

/**
 * min 1/2 mu'G mu + h'mu  s.t.  mu_i >= 0 for i in [m_eq, m_eq + m_in).
 *
 * G is symmetric positive semi-definite; the first m_eq coordinates are
 * free equality multipliers.
 */
struct DualQP
{
  Matrix G;
  Vector h;
  Index m_eq = 0;
  Index m_in = 0;

  Index dimension() const { return m_eq + m_in; }
  double objective(const Vector& mu) const;
  /// Throws InvalidInput on inconsistent sizes or asymmetric G.
  void validate() const;
};

struct IterateState
{
  Vector mu;
  WorkingSet W;
  MaskedFactor factor;
  int k = 0;
};

/// Snapshot handed to SolverConfig::observer after each outer iteration.
struct IterationTrace
{
  int k;
  const Vector& mu;
  const WorkingSet& W;
  const MaskedFactor& factor;
  double objective;
};

struct SolverConfig
{
  RefineConfig refine;
  /// Initial working set from the sign of h; cold start (empty set) if off.
  bool smartstart = true;
  /// Outer iteration cap; 0 selects 10 * (m_eq + m_in).
  int max_outer = 0;
  /// Bound multipliers >= -multiplier_tol count as nonnegative.
  double multiplier_tol = 1e-8;
  /// A subproblem minimizer with ||p||_inf <= zero_step_tol * (1 +
  /// ||mu||_inf) is treated as p = 0.
  double zero_step_tol = 1e-12;
  /// Compare the incremental factor against a full refactorization every
  /// this many iterations (0 disables).
#ifdef NDEBUG
  int factor_check_every = 0;
#else
  int factor_check_every = 50;
#endif
  std::function<void(const IterationTrace&)> observer;
};

enum class SolveStatus
{
  Optimal,
  IterationLimit,
  NumericalFailure,
};

const char*
to_string(SolveStatus s);

/// Optimality residuals of the dual problem at mu.
struct DualResiduals
{
  /// max |(G mu + h)_i| over unmasked coordinates.
  double stationarity = 0.0;
  /// max(0, -mu_i) over inequality coordinates.
  double dual_feasibility = 0.0;
  /// max(0, -(G mu + h)_i) over masked coordinates.
  double multiplier_sign = 0.0;
  /// max |mu_i (G mu + h)_i| over inequality coordinates.
  double complementarity = 0.0;
};

DualResiduals
dual_residuals(const DualQP& qp, const Vector& mu, const WorkingSet& W);

struct SolveReport
{
  Vector mu_star;
  WorkingSet working_set;
  SolveStatus status = SolveStatus::NumericalFailure;
  int outer_iters = 0;
  int subproblems = 0;
  int refine_iters_min = 0;
  int refine_iters_max = 0;
  double refine_iters_mean = 0.0;
  int descent_directions = 0;
  int refactorizations = 0;
  DualResiduals residuals;
  /// Largest of the dual residuals.
  double kkt_residual = 0.0;
  double objective = 0.0;
  std::string diagnostic;
};

/// {i in inequality range : h_i > 0}; see smartstart() notes in the
/// implementation for the sign.
WorkingSet
smartstart(const DualQP& qp);

struct StepLength
{
  double alpha;
  std::optional<Index> blocking;
};

/**
 * Largest feasible step along p. Ratios -mu_i / p_i are taken over free
 * inequality coordinates with p_i < 0; ties go to the smallest index.
 * When `bounded`, alpha is capped at 1 and blocking is empty if the cap
 * binds. Throws UnboundedDual when !bounded and no coordinate decreases.
 */
StepLength
step_length(const Vector& mu,
            const Vector& p,
            const WorkingSet& W,
            bool bounded);

/// Solves the equality-pinned subproblem at the current iterate with
/// c = h + G mu.
RefineOutcome
subproblem_direction(const IterateState& state,
                     const DualQP& qp,
                     const RefineConfig& cfg);

/// Dual active-set iteration from mu = 0 and working set W0.
SolveReport
solve_dual(const DualQP& qp, const WorkingSet& W0, const SolverConfig& cfg);

/// As above with W0 chosen by cfg.smartstart.
SolveReport
solve_dual(const DualQP& qp, const SolverConfig& cfg = {});

} // namespace qpdas

#endif // QPDAS_ACTIVE_SET_HPP
