#ifndef QPDAS_GENERATORS_HPP
#define QPDAS_GENERATORS_HPP

#include "qpdas/transform.hpp"
#include "qpdas/types.hpp"

#include <cstdint>

namespace qpdas {

/**
 * Linear MPC problem x[k+1] = A x[k] + B u[k] with cost
 * sum_{k=1..N} x[k]'Q x[k] + u[k-1]'R u[k-1] and box bounds
 * -u_x <= x[k] <= u_x on the predicted states x[1..N].
 */
struct MpcSpec
{
  Matrix A_dyn;
  Matrix B_dyn;
  Index horizon = 30;
  Matrix Q;
  Matrix R;
  Vector x0;
  Vector u_x;

  /// AFTI-16 model, N = 30, Q = R = I, bounds 0.2 and the default x0.
  static MpcSpec afti16(Index horizon = 30);
  void validate() const;
};

/// Prediction matrices x_bar = Phi x0 + Gamma u_bar with
/// x_bar = [x[1]; ...; x[N]] and u_bar = [u[0]; ...; u[N-1]].
struct MpcPrediction
{
  Matrix Phi;
  Matrix Gamma;
  /// Condensed cost u'F u + 2 u'G_x x0 + x0'H x0.
  Matrix F;
  Matrix G_x;
  Matrix H;
};

MpcPrediction
condense_mpc(const MpcSpec& spec);

/**
 * Condensed QP over u_bar: P = 2F, q = 2 G_x x0, with the two-sided state
 * bounds written as the one-sided rows [Gamma; -Gamma] u <= [u_x - Phi x0;
 * u_x + Phi x0] (bound vectors repeated over the horizon). Throws
 * InvalidInput when F is not positive definite.
 */
PrimalQP
build_mpc(const MpcSpec& spec);

/// Projection of a random c onto {x : Cx <= d} with unit-norm rows.
struct PolytopeSpec
{
  Index n = 1000;
  Index m = 50;
  std::uint64_t seed = 1;
  /// Share of constraints violated at c.
  double target_active_fraction = 0.5;

  void validate() const;
};

/**
 * P = I (flagged, not stored), q = -c. Rows are oriented so C_i c > 0 and
 * d_i is positive for every row, which keeps x = 0 strictly feasible; a
 * random subset of about target_active_fraction * m rows gets d_i < C_i c.
 */
PrimalQP
build_polytope(const PolytopeSpec& spec);

} // namespace qpdas

#endif // QPDAS_GENERATORS_HPP
