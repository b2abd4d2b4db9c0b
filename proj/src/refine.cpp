#include "qpdas/refine.hpp"

#include "qpdas/errors.hpp"

#include <cmath>

namespace qpdas {

namespace {

constexpr double kNullTol = 1e-8;

// x <- (I + Gbar / eps)^{-1} x until ||Gbar x|| <= kNullTol * ||x0||.
bool
resolvent_projection(const MaskedFactor& f, Vector& x, int max_iters, int& iters)
{
  const double target = kNullTol * x.norm();
  const double eps = f.epsilon();
  iters = 0;
  if (f.masked_product(x).norm() <= target)
    return true;
  while (iters < max_iters) {
    x = f.solve(eps * x);
    ++iters;
    if (f.masked_product(x).norm() <= target)
      return true;
  }
  return false;
}

} // namespace

void
RefineConfig::validate() const
{
  if (!(epsilon > 0.0) || !(res_tol > 0.0) || !(stagnation_tol > 0.0) ||
      !(dd_tol > 0.0) || !(curvature_tol > 0.0))
    throw InvalidInput("RefineConfig: tolerances must be positive");
  if (max_iters < 1 || polish_max_iters < 0 || settle_iters < 2)
    throw InvalidInput("RefineConfig: iteration limits must be positive");
}

RefineOutcome
refine_solve(const MaskedFactor& f, const Vector& c_bar, const RefineConfig& cfg)
{
  cfg.validate();
  if (c_bar.size() != f.dimension())
    throw InvalidInput("refine_solve: length mismatch");

  const Index n = f.dimension();
  const double res_limit = cfg.res_tol * (1.0 + c_bar.norm());

  RefineOutcome out;
  Vector x = Vector::Zero(n);
  Vector r = -c_bar;
  double res = r.norm();

  Vector dx_prev;
  double res_prev = res;
  double step_ratio = 0.0;
  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Vector dx = f.solve(r);
    x += dx;
    r = -c_bar - f.masked_product(x);
    res = r.norm();

    const double xnorm = x.norm();
    step_ratio = xnorm > 0.0 ? dx.norm() / xnorm : 0.0;
    if (res <= res_limit && step_ratio <= cfg.stagnation_tol) {
      out.kind = RefineKind::Solution;
      out.p = std::move(x);
      out.iters = k;
      out.final_residual = res;
      return out;
    }

    if (k == 1) {
      dx_prev = dx;
      res_prev = res;
      continue;
    }
    const bool settled = (dx - dx_prev).norm() <= cfg.dd_tol * xnorm;
    if (step_ratio > cfg.stagnation_tol) {
      // Steps are not shrinking relative to x: x drifts along (nearly)
      // zero-curvature directions. Accept once the step has settled, or
      // earlier if its curvature is already below tolerance.
      Vector p = dx / dx.norm();
      if (c_bar.dot(p) > 0.0)
        p = -p;
      const bool flat = f.masked_product(p).norm() <= cfg.curvature_tol;
      if (settled || (k >= cfg.settle_iters && flat)) {
        if (cfg.polish) {
          Vector q = p;
          int polish_iters = 0;
          resolvent_projection(f, q, cfg.polish_max_iters, polish_iters);
          const double qn = q.norm();
          if (qn > 0.0 && c_bar.dot(q) < 0.0)
            p = q / qn;
        }
        if (c_bar.dot(p) < 0.0 &&
            f.masked_product(p).norm() <= cfg.curvature_tol) {
          out.kind = RefineKind::DescentDirection;
          out.p = std::move(p);
          out.iters = k;
          out.final_residual = res;
          return out;
        }
      }
    } else if (settled && res >= 0.5 * res_prev) {
      // Converged, with the residual stalled at round-off level.
      out.kind = RefineKind::Solution;
      out.p = std::move(x);
      out.iters = k;
      out.final_residual = res;
      return out;
    }
    dx_prev = dx;
    res_prev = res;
  }
  throw NoConvergence("refine_solve: no classification after " +
                        std::to_string(cfg.max_iters) + " iterations",
                      cfg.max_iters,
                      res,
                      step_ratio);
}

Vector
project_null_from(const MaskedFactor& f, Vector x0, int max_iters, int* iters)
{
  if (x0.size() != f.dimension())
    throw InvalidInput("project_null: length mismatch");
  int taken = 0;
  const bool ok = resolvent_projection(f, x0, max_iters, taken);
  if (iters)
    *iters = taken;
  if (!ok)
    throw NoConvergence("project_null: no convergence after " +
                          std::to_string(max_iters) + " iterations",
                        taken,
                        f.masked_product(x0).norm(),
                        0.0);
  return x0;
}

Vector
project_null(const MaskedFactor& f, const Vector& c_bar, const RefineConfig& cfg)
{
  cfg.validate();
  return project_null_from(f, -c_bar, cfg.max_iters);
}

double
contraction_rate(double lambda_min, double epsilon)
{
  if (!(lambda_min > 0.0) || !(epsilon > 0.0))
    throw InvalidInput("contraction_rate: inputs must be positive");
  return epsilon / (lambda_min + epsilon);
}

} // namespace qpdas
