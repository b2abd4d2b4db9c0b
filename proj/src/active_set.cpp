#include "qpdas/active_set.hpp"

#include "qpdas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace qpdas {

double
DualQP::objective(const Vector& mu) const
{
  return 0.5 * mu.dot(G * mu) + h.dot(mu);
}

void
DualQP::validate() const
{
  if (m_eq < 0 || m_in < 0)
    throw InvalidInput("DualQP: negative block size");
  const Index m = dimension();
  if (G.rows() != m || G.cols() != m)
    throw InvalidInput("DualQP: G must be " + std::to_string(m) + "x" +
                       std::to_string(m));
  if (h.size() != m)
    throw InvalidInput("DualQP: h must have length " + std::to_string(m));
  if (!G.allFinite() || !h.allFinite())
    throw InvalidInput("DualQP: non-finite data");
  if (m > 0 && (G - G.transpose()).cwiseAbs().maxCoeff() >
                 1e-12 * (1.0 + G.cwiseAbs().maxCoeff()))
    throw InvalidInput("DualQP: G is not symmetric");
}

const char*
to_string(SolveStatus s)
{
  switch (s) {
    case SolveStatus::Optimal:
      return "Optimal";
    case SolveStatus::IterationLimit:
      return "IterationLimit";
    case SolveStatus::NumericalFailure:
      return "NumericalFailure";
  }
  return "Unknown";
}

DualResiduals
dual_residuals(const DualQP& qp, const Vector& mu, const WorkingSet& W)
{
  DualResiduals r;
  const Vector g = qp.G * mu + qp.h;
  for (Index i = 0; i < qp.dimension(); ++i) {
    if (W.contains(i))
      r.multiplier_sign = std::max(r.multiplier_sign, -g(i));
    else
      r.stationarity = std::max(r.stationarity, std::abs(g(i)));
    if (i >= qp.m_eq) {
      r.dual_feasibility = std::max(r.dual_feasibility, -mu(i));
      r.complementarity = std::max(r.complementarity, std::abs(mu(i) * g(i)));
    }
  }
  return r;
}

// At mu = 0 the dual gradient is h, and h_i = d_i - (C x_u)_i is the slack
// of inequality i at the unconstrained primal minimizer x_u = -P^{-1} q.
// A positive slack marks a constraint that is likely inactive in the primal,
// i.e. one whose multiplier stays at its bound, so it starts in the set.
WorkingSet
smartstart(const DualQP& qp)
{
  WorkingSet W(qp.m_eq, qp.m_in);
  for (Index i = qp.m_eq; i < qp.dimension(); ++i)
    if (qp.h(i) > 0.0)
      W.insert(i);
  return W;
}

StepLength
step_length(const Vector& mu,
            const Vector& p,
            const WorkingSet& W,
            bool bounded)
{
  if (mu.size() != W.dimension() || p.size() != W.dimension())
    throw InvalidInput("step_length: length mismatch");
  double best = std::numeric_limits<double>::infinity();
  std::optional<Index> arg;
  for (Index i = W.m_eq(); i < W.dimension(); ++i) {
    if (W.contains(i) || !(p(i) < 0.0))
      continue;
    const double ratio = std::max(0.0, -mu(i) / p(i));
    if (ratio < best) {
      best = ratio;
      arg = i;
    }
  }
  if (bounded) {
    if (best < 1.0)
      return { best, arg };
    return { 1.0, std::nullopt };
  }
  if (!arg)
    throw UnboundedDual("step_length: zero-curvature descent direction has no "
                        "blocking constraint; the primal problem is "
                        "infeasible");
  return { best, arg };
}

RefineOutcome
subproblem_direction(const IterateState& state,
                     const DualQP& qp,
                     const RefineConfig& cfg)
{
  const Vector c = qp.h + qp.G * state.mu;
  return refine_solve(state.factor, mask_vector(c, state.W), cfg);
}

namespace {

struct RefineStats
{
  int count = 0;
  int min = std::numeric_limits<int>::max();
  int max = 0;
  long total = 0;

  void add(int iters)
  {
    ++count;
    min = std::min(min, iters);
    max = std::max(max, iters);
    total += iters;
  }
};

void
remove_with_fallback(IterateState& st, Index j, SolveReport& report)
{
  st.W.erase(j);
  try {
    st.factor.remove_index(j);
  } catch (const NumericalBreakdown&) {
    st.factor.refactorize();
    ++report.refactorizations;
  }
}

} // namespace

SolveReport
solve_dual(const DualQP& qp, const WorkingSet& W0, const SolverConfig& cfg)
{
  qp.validate();
  cfg.refine.validate();
  if (W0.dimension() != qp.dimension() || W0.m_eq() != qp.m_eq)
    throw InvalidInput("solve_dual: initial working set does not match the "
                       "problem");

  const Index m = qp.dimension();
  const int max_outer =
    cfg.max_outer > 0 ? cfg.max_outer : static_cast<int>(10 * std::max<Index>(m, 1));

  IterateState st{ Vector::Zero(m), W0, MaskedFactor(qp.G, W0, cfg.refine.epsilon), 0 };
  SolveReport report;
  RefineStats stats;

  double objective = 0.0;
  double level = objective;
  std::set<std::vector<Index>> seen_at_level;
  bool at_minimizer = false;
  const double curvature_floor =
    1e-12 * std::max(1.0, m > 0 ? qp.G.cwiseAbs().maxCoeff() : 0.0);

  auto finish = [&](SolveStatus status, std::string diagnostic) {
    report.status = status;
    report.diagnostic = std::move(diagnostic);
    report.mu_star = st.mu;
    report.working_set = st.W;
    report.objective = qp.objective(st.mu);
    report.residuals = dual_residuals(qp, st.mu, st.W);
    report.kkt_residual = std::max({ report.residuals.stationarity,
                                     report.residuals.dual_feasibility,
                                     report.residuals.multiplier_sign,
                                     report.residuals.complementarity });
    report.subproblems = stats.count;
    report.refine_iters_min = stats.count ? stats.min : 0;
    report.refine_iters_max = stats.max;
    report.refine_iters_mean =
      stats.count ? static_cast<double>(stats.total) / stats.count : 0.0;
    return report;
  };

  for (int k = 0; k < max_outer; ++k) {
    st.k = k;
    report.outer_iters = k + 1;

    bool zero_step = at_minimizer;
    RefineOutcome dir;
    if (!zero_step) {
      try {
        dir = subproblem_direction(st, qp, cfg.refine);
      } catch (const NoConvergence&) {
        // The incremental factor may have drifted; retry once from scratch.
        st.factor.refactorize();
        ++report.refactorizations;
        try {
          dir = subproblem_direction(st, qp, cfg.refine);
        } catch (const NoConvergence& e) {
          return finish(SolveStatus::NumericalFailure, e.what());
        }
      }
      stats.add(dir.iters);
      if (dir.kind == RefineKind::DescentDirection)
        ++report.descent_directions;
      else if (dir.p.lpNorm<Eigen::Infinity>() <=
               cfg.zero_step_tol * (1.0 + st.mu.lpNorm<Eigen::Infinity>()))
        zero_step = true;
    }

    if (zero_step) {
      // Bound multipliers of the masked coordinates are the gradient
      // entries; they are the negated multipliers of the pinned KKT system.
      const Vector g = qp.h + qp.G * st.mu;
      Index drop = -1;
      double lowest = -cfg.multiplier_tol;
      for (Index i : st.W) {
        if (g(i) < lowest) {
          lowest = g(i);
          drop = i;
        }
      }
      if (drop < 0)
        return finish(SolveStatus::Optimal, {});
      remove_with_fallback(st, drop, report);
      at_minimizer = false;
    } else {
      const bool bounded = dir.kind == RefineKind::Solution;
      StepLength step{ 1.0, std::nullopt };
      if (bounded) {
        step = step_length(st.mu, dir.p, st.W, true);
      } else {
        // A direction accepted as zero-curvature may still carry a little
        // positive curvature; never step past the minimizer along the line.
        const double slope = (qp.h + qp.G * st.mu).dot(dir.p);
        const double curvature = dir.p.dot(qp.G * dir.p);
        const double line_min =
          curvature > curvature_floor ? -slope / curvature
                                      : std::numeric_limits<double>::infinity();
        try {
          step = step_length(st.mu, dir.p, st.W, false);
          if (line_min < step.alpha)
            step = { line_min, std::nullopt };
        } catch (const UnboundedDual&) {
          if (!std::isfinite(line_min))
            throw;
          step = { line_min, std::nullopt };
        }
      }
      st.mu += step.alpha * dir.p;
      for (Index i = qp.m_eq; i < m; ++i)
        if (!st.W.contains(i) && st.mu(i) < 0.0)
          st.mu(i) = 0.0;
      if (step.blocking) {
        st.mu(*step.blocking) = 0.0;
        st.W.insert(*step.blocking);
        st.factor.add_index(*step.blocking);
      }
      at_minimizer = bounded && !step.blocking;
    }

    objective = qp.objective(st.mu);
    if (objective < level - 1e-14 * (1.0 + std::abs(level))) {
      level = objective;
      seen_at_level.clear();
    } else if (!seen_at_level.insert(st.W.indices()).second && !at_minimizer) {
      return finish(SolveStatus::IterationLimit,
                    "cycling: working set repeated at objective " +
                      std::to_string(objective));
    }

    if (cfg.factor_check_every > 0 && (k + 1) % cfg.factor_check_every == 0 &&
        st.factor.consistency_error() > 1e-9) {
      st.factor.refactorize();
      ++report.refactorizations;
    }

    if (cfg.observer)
      cfg.observer(IterationTrace{ k, st.mu, st.W, st.factor, objective });
  }
  return finish(SolveStatus::IterationLimit,
                "outer iteration cap " + std::to_string(max_outer) +
                  " reached");
}

SolveReport
solve_dual(const DualQP& qp, const SolverConfig& cfg)
{
  qp.validate();
  const WorkingSet W0 =
    cfg.smartstart ? smartstart(qp) : WorkingSet(qp.m_eq, qp.m_in);
  return solve_dual(qp, W0, cfg);
}

} // namespace qpdas
