#ifndef QPDAS_ORACLE_HPP
#define QPDAS_ORACLE_HPP

#include "qpdas/transform.hpp"
#include "qpdas/types.hpp"

#include <cstdint>
#include <vector>

namespace qpdas {

/// Largest inequality count accepted by enumerate_solve.
inline constexpr Index kOracleMaxInequalities = 20;

struct OracleResult
{
  /// False when no active set produced a feasible KKT point.
  bool feasible = false;
  /// KKT conditions verified for the returned point.
  bool certified = false;
  Vector x;
  Vector mu_eq;
  Vector mu_in;
  /// Zero-based inequality rows held as equalities.
  std::vector<Index> active;
  double objective = 0.0;
  int candidates_checked = 0;
};

/**
 * Brute-force reference solver: tries every subset of inequality rows as
 * equalities, solves the resulting KKT system in the least-squares sense
 * (so dependent rows are allowed), and keeps the feasible candidate with
 * nonnegative multipliers and lowest objective. Subsets are visited by
 * size and then lexicographically, and ties keep the first one found.
 *
 * Shares no code with the active-set solver. Throws InvalidInput when
 * m_in exceeds kOracleMaxInequalities.
 */
OracleResult
enumerate_solve(const PrimalQP& qp);

/**
 * Random feasible test problem: P = M'M + I, constraints sampled around
 * an interior point. With `make_degenerate`, rows of C are duplicated and
 * negated (or copied from A when C is too small) so [A; C] loses rank.
 */
PrimalQP
random_qp(std::uint64_t seed,
          Index n,
          Index m_eq,
          Index m_in,
          bool make_degenerate);

} // namespace qpdas

#endif // QPDAS_ORACLE_HPP
