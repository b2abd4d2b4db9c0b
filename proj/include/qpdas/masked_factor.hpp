#ifndef QPDAS_MASKED_FACTOR_HPP
#define QPDAS_MASKED_FACTOR_HPP

#include "qpdas/types.hpp"
#include "qpdas/working_set.hpp"

namespace qpdas {

/// Default diagonal shift applied before factorizing the masked matrix.
inline constexpr double kDefaultEpsilon = 1e-7;

/**
 * G with the working-set rows and columns replaced by unit vectors:
 * diagonal 1 at masked indices, zero off-diagonal in masked rows/columns,
 * G elsewhere.
 */
Matrix
build_masked(const Matrix& G, const WorkingSet& W);

/// Copy of `c` with masked entries set to zero.
Vector
mask_vector(const Vector& c, const WorkingSet& W);

/**
 * Multipliers of the equality-pinned subproblem
 *
 *   min 1/2 p'Gp + c'p  s.t. p_i = 0, i in W,
 *
 * taken from its KKT system [G E'; E 0][p; lambda] = [-c; 0], i.e.
 * lambda_j = (-Gp - c)_i for the j-th index i of W.
 */
Vector
lambda_from_direction(const Matrix& G,
                      const Vector& p,
                      const Vector& c,
                      const WorkingSet& W);

/**
 * Cholesky factor L of (Gbar + eps I) for the current working set.
 *
 * The mask is applied first, so masked diagonal entries hold 1 + eps.
 * Adding or removing one index costs O(n^2): a rank-one update of the
 * trailing block on add, a triangular solve plus rank-one downdate on
 * remove. A full factorization is only needed at construction and
 * through refactorize().
 */
class MaskedFactor
{
public:
  MaskedFactor(Matrix G, WorkingSet mask, double epsilon = kDefaultEpsilon);

  Index dimension() const { return base_.rows(); }
  const Matrix& base() const { return base_; }
  const WorkingSet& mask() const { return mask_; }
  double epsilon() const { return epsilon_; }

  /// Lower-triangular factor. Entries above the diagonal are zero.
  const Matrix& factor() const { return L_; }

  /// Pins index `i`. Throws PreconditionError if `i` is already masked or
  /// outside the inequality range.
  void add_index(Index i);

  /// Releases index `i`. Throws PreconditionError if `i` is not masked and
  /// NumericalBreakdown if the downdate loses positivity; in the latter
  /// case the mask already excludes `i` and the factor must be rebuilt.
  void remove_index(Index i);

  /// Recomputes the factor from scratch for the current mask.
  void refactorize();

  /// Solves (Gbar + eps I) x = rhs.
  Vector solve(const Vector& rhs) const;

  /// Gbar * x, without the eps shift.
  Vector masked_product(const Vector& x) const;

  /// L L', for consistency checks.
  Matrix reconstruct() const;

  /// Relative Frobenius distance between L L' and Gbar + eps I.
  double consistency_error() const;

  /// Breakdown threshold on squared pivots during a downdate.
  double breakdown_threshold() const;

private:
  Matrix base_;
  WorkingSet mask_;
  double epsilon_;
  Matrix L_;
  bool valid_ = false;
};

/// In-place rank-one update L L' + v v' of a lower-triangular block.
void
cholesky_rank1_update(Eigen::Ref<Matrix> L, Eigen::Ref<Vector> v);

/// In-place rank-one downdate L L' - v v'. Throws NumericalBreakdown when a
/// squared pivot drops below `threshold`.
void
cholesky_rank1_downdate(Eigen::Ref<Matrix> L,
                        Eigen::Ref<Vector> v,
                        double threshold);

} // namespace qpdas

#endif // QPDAS_MASKED_FACTOR_HPP
