#ifndef QPDAS_TRANSFORM_HPP
#define QPDAS_TRANSFORM_HPP

#include "qpdas/active_set.hpp"
#include "qpdas/types.hpp"

#include <optional>

namespace qpdas {

/**
 * min 1/2 x'Px + q'x  s.t.  Ax = b, Cx <= d.
 *
 * P must be symmetric positive definite. With `identity_P` set, P is not
 * stored (left 0x0) and taken to be the n x n identity; this keeps large
 * projection problems from materializing an n^2 matrix.
 */
struct PrimalQP
{
  Matrix P;
  Vector q;
  Matrix A;
  Vector b;
  Matrix C;
  Vector d;
  bool identity_P = false;

  Index n() const { return q.size(); }
  Index m_eq() const { return A.rows(); }
  Index m_in() const { return C.rows(); }

  double objective(const Vector& x) const;
  /// Throws InvalidInput on inconsistent sizes, non-finite data or an
  /// asymmetric P.
  void validate() const;
};

/// Cholesky factor of P retained for primal recovery.
class PFactor
{
public:
  PFactor() = default;
  /// Throws InvalidProblem if P is not positive definite.
  explicit PFactor(const PrimalQP& qp);

  bool identity() const { return identity_; }
  /// Solves P X = B in place.
  void solve_in_place(Eigen::Ref<Matrix> B) const;
  Vector solve(const Vector& v) const;
  /// L^{-1} B, with L the lower Cholesky factor.
  Matrix half_solve(const Matrix& B) const;

private:
  bool identity_ = true;
  Eigen::LLT<Matrix> llt_;
};

struct PrimalResiduals
{
  double eq_violation = 0.0;
  /// max(0, max_i (Cx - d)_i)
  double ineq_violation = 0.0;
};

struct PrimalSolution
{
  Vector x;
  Vector mu_eq;
  Vector mu_in;
  PrimalResiduals primal_residuals;
  /// ||Px + q + A'mu_eq + C'mu_in||_inf
  double stationarity_residual = 0.0;
  /// max_i |mu_in_i (Cx - d)_i|
  double complementarity = 0.0;
  double objective = 0.0;
};

struct DualProblem
{
  DualQP dual;
  PFactor pfactor;
};

/// G = M P^{-1} M' and h = M P^{-1} q + [b; d] for M = [A; C], formed from
/// triangular solves with the Cholesky factor of P.
DualProblem
build_dual(const PrimalQP& qp);

/// x = -P^{-1}(q + A'mu_eq + C'mu_in) together with its residuals.
PrimalSolution
recover_primal(const PrimalQP& qp, const PFactor& pf, const Vector& mu);

} // namespace qpdas

#endif // QPDAS_TRANSFORM_HPP
