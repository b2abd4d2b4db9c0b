#ifndef QPDAS_REFINE_HPP
#define QPDAS_REFINE_HPP

#include "qpdas/masked_factor.hpp"
#include "qpdas/types.hpp"

namespace qpdas {

/**
 * Tolerances for proximal-point refinement on (Gbar + eps I).
 *
 * `epsilon` is the shift used when a solver builds the factor (the
 * proximal step size is 1/epsilon); refine_solve itself reads the shift
 * from the factor it is handed.
 */
struct RefineConfig
{
  double epsilon = kDefaultEpsilon;
  int max_iters = 100;
  /// Relative residual ||Gbar x + cbar|| / (1 + ||cbar||) accepted as solved.
  double res_tol = 1e-11;
  /// ||dx|| / ||x|| below this means the iterates converge, above it they
  /// drift along the null space.
  double stagnation_tol = 1e-3;
  /// ||ddx|| / ||x|| below this means the step has settled.
  double dd_tol = 1e-7;
  /// Bound on ||Gbar p|| / ||p|| for a returned descent direction.
  double curvature_tol = 1e-6;
  /// Earliest iteration at which a drifting step may be returned on the
  /// curvature test alone, before its second difference has settled.
  int settle_iters = 3;
  /// Run a null-space projection seeded with the extracted direction.
  bool polish = true;
  int polish_max_iters = 100;

  /// Throws InvalidInput unless every tolerance is positive.
  void validate() const;
};

enum class RefineKind
{
  Solution,
  DescentDirection,
};

struct RefineOutcome
{
  RefineKind kind = RefineKind::Solution;
  /// Solution of Gbar p = -cbar, or a unit-norm direction with Gbar p ~ 0
  /// and cbar' p < 0.
  Vector p;
  int iters = 0;
  double final_residual = 0.0;
};

/**
 * Iterates x <- x + (Gbar + eps I)^{-1} (-cbar - Gbar x) from x = 0.
 *
 * When Gbar p = -cbar is consistent the iterates converge to a solution.
 * Otherwise the steps settle on a fixed vector proportional to the
 * projection of -cbar onto N(Gbar), which is returned as a normalized
 * descent direction. `c_bar` must already be zero on the mask.
 *
 * Throws NoConvergence if neither case is recognized within max_iters.
 */
RefineOutcome
refine_solve(const MaskedFactor& f, const Vector& c_bar, const RefineConfig& cfg);

/**
 * Orthogonal projection of -cbar onto N(Gbar), computed by iterating the
 * resolvent x <- (I + Gbar / eps)^{-1} x from x = -cbar.
 */
Vector
project_null(const MaskedFactor& f, const Vector& c_bar, const RefineConfig& cfg);

/// Same iteration seeded with an arbitrary start point. Stops when
/// ||Gbar x|| <= 1e-8 ||x0||; `iters` receives the number of steps taken.
Vector
project_null_from(const MaskedFactor& f,
                  Vector x0,
                  int max_iters,
                  int* iters = nullptr);

/// Linear rate eps / (lambda_min + eps) of the refinement, where
/// lambda_min is the smallest nonzero eigenvalue of Gbar.
double
contraction_rate(double lambda_min, double epsilon);

} // namespace qpdas

#endif // QPDAS_REFINE_HPP
