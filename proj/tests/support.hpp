#ifndef QPDAS_TESTS_SUPPORT_HPP
#define QPDAS_TESTS_SUPPORT_HPP

// Reference computations for the tests. Nothing here calls into the solver;
// the masked matrix, projections and KKT solves are rebuilt from their
// definitions with plain Eigen decompositions.

#include "qpdas/random.hpp"
#include "qpdas/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qpdas::testing {

inline Matrix
random_orthogonal(Rng& rng, Index n)
{
  Eigen::HouseholderQR<Matrix> qr(rng.normal_matrix(n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// Symmetric matrix Q diag(eigs) Q' with a random orthogonal Q.
inline Matrix
with_spectrum(Rng& rng, const Vector& eigs)
{
  const Matrix Q = random_orthogonal(rng, eigs.size());
  Matrix S = Q * eigs.asDiagonal() * Q.transpose();
  return 0.5 * (S + S.transpose());
}

/// Positive definite matrix with eigenvalues spread over [lo, hi].
inline Matrix
random_pd(Rng& rng, Index n, double lo = 0.5, double hi = 10.0)
{
  Vector e(n);
  for (Index i = 0; i < n; ++i)
    e(i) = rng.uniform(lo, hi);
  return with_spectrum(rng, e);
}

/// Mask applied entrywise from the definition.
inline Matrix
masked_reference(const Matrix& G, const std::vector<Index>& W)
{
  const Index n = G.rows();
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (Index i : W)
    in[static_cast<std::size_t>(i)] = true;
  Matrix M(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const bool mi = in[static_cast<std::size_t>(i)];
      const bool mj = in[static_cast<std::size_t>(j)];
      if (mi || mj)
        M(i, j) = (i == j) ? 1.0 : 0.0;
      else
        M(i, j) = G(i, j);
    }
  return M;
}

inline double
rel_fro(const Matrix& X, const Matrix& Y, double scale)
{
  return (X - Y).norm() / (1.0 + scale);
}

/// Orthogonal projection of v onto the null space of the symmetric S,
/// eigenvalues below tol * max(1, |lambda|_max) counting as zero.
inline Vector
null_projection(const Matrix& S, const Vector& v, double tol = 1e-9)
{
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Vector out = Vector::Zero(v.size());
  for (Index k = 0; k < S.rows(); ++k)
    if (std::abs(es.eigenvalues()(k)) <= tol * top) {
      const auto u = es.eigenvectors().col(k);
      out += u * u.dot(v);
    }
  return out;
}

inline double
angle(const Vector& a, const Vector& b)
{
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Both blocks of the solution of [G E'; E 0][p; lambda] = [-c; 0] where E
/// selects the rows listed in W.
struct KktSolution
{
  Vector p;
  Vector lambda;
};

inline KktSolution
equality_kkt(const Matrix& G, const Vector& c, const std::vector<Index>& W)
{
  const Index n = G.rows();
  const Index k = static_cast<Index>(W.size());
  Matrix K = Matrix::Zero(n + k, n + k);
  K.topLeftCorner(n, n) = G;
  for (Index j = 0; j < k; ++j) {
    K(W[static_cast<std::size_t>(j)], n + j) = 1.0;
    K(n + j, W[static_cast<std::size_t>(j)]) = 1.0;
  }
  Vector rhs = Vector::Zero(n + k);
  rhs.head(n) = -c;
  const Vector sol = K.fullPivLu().solve(rhs);
  return { sol.head(n), sol.tail(k) };
}

/// Random subset of {lo, ..., hi-1} with `count` elements, sorted.
inline std::vector<Index>
random_subset(Rng& rng, Index lo, Index hi, Index count)
{
  std::vector<Index> all(static_cast<std::size_t>(hi - lo));
  std::iota(all.begin(), all.end(), lo);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t j =
      i + static_cast<std::size_t>(rng.below(all.size() - i));
    std::swap(all[i], all[j]);
  }
  all.resize(static_cast<std::size_t>(count));
  std::sort(all.begin(), all.end());
  return all;
}

} // namespace qpdas::testing

#endif // QPDAS_TESTS_SUPPORT_HPP
