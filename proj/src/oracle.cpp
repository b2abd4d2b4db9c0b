#include "qpdas/oracle.hpp"

#include "qpdas/errors.hpp"
#include "qpdas/random.hpp"

#include <cmath>
#include <string>

namespace qpdas {

namespace {

constexpr double kFeasTol = 1e-8;
constexpr double kSignTol = 1e-8;
constexpr double kConsistencyTol = 1e-9;

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
template<typename F>
void
for_each_subset(Index n, Index k, F&& visit)
{
  std::vector<Index> idx(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i)
    idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(idx);
    Index pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos)
      --pos;
    if (pos < 0)
      return;
    ++idx[static_cast<std::size_t>(pos)];
    for (Index j = pos + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

} // namespace

OracleResult
enumerate_solve(const PrimalQP& qp)
{
  qp.validate();
  const Index n = qp.n();
  const Index me = qp.m_eq();
  const Index mi = qp.m_in();
  if (mi > kOracleMaxInequalities)
    throw InvalidInput("enumerate_solve: refusing to enumerate " +
                       std::to_string(mi) + " inequalities (limit " +
                       std::to_string(kOracleMaxInequalities) + ")");
  const Matrix P = qp.identity_P ? Matrix(Matrix::Identity(n, n)) : qp.P;

  OracleResult best;
  for (Index size = 0; size <= std::min(mi, n + mi); ++size) {
    for_each_subset(mi, size, [&](const std::vector<Index>& rows) {
      ++best.candidates_checked;
      const Index k = me + size;
      Matrix K = Matrix::Zero(n + k, n + k);
      Vector rhs(n + k);
      K.topLeftCorner(n, n) = P;
      rhs.head(n) = -qp.q;
      if (me > 0) {
        K.block(n, 0, me, n) = qp.A;
        rhs.segment(n, me) = qp.b;
      }
      for (Index j = 0; j < size; ++j) {
        const Index r = rows[static_cast<std::size_t>(j)];
        K.block(n + me + j, 0, 1, n) = qp.C.row(r);
        rhs(n + me + j) = qp.d(r);
      }
      K.topRightCorner(n, k) = K.bottomLeftCorner(k, n).transpose();

      const Vector z = K.completeOrthogonalDecomposition().solve(rhs);
      if ((K * z - rhs).norm() > kConsistencyTol * (1.0 + rhs.norm()))
        return;
      const Vector x = z.head(n);
      const Vector nu = z.tail(size);
      if (size > 0 && nu.minCoeff() < -kSignTol)
        return;
      if (mi > 0) {
        const Vector slack = qp.C * x - qp.d;
        for (Index i = 0; i < mi; ++i)
          if (slack(i) > kFeasTol * (1.0 + std::abs(qp.d(i))))
            return;
      }
      const double obj = qp.objective(x);
      if (best.feasible &&
          !(obj < best.objective - 1e-12 * (1.0 + std::abs(best.objective))))
        return;
      best.feasible = true;
      best.certified = true;
      best.x = x;
      best.objective = obj;
      best.active = rows;
      best.mu_eq = z.segment(n, me);
      best.mu_in = Vector::Zero(mi);
      for (Index j = 0; j < size; ++j)
        best.mu_in(rows[static_cast<std::size_t>(j)]) = nu(j);
    });
  }
  return best;
}

PrimalQP
random_qp(std::uint64_t seed,
          Index n,
          Index m_eq,
          Index m_in,
          bool make_degenerate)
{
  if (n < 1 || m_eq < 0 || m_in < 0)
    throw InvalidInput("random_qp: invalid sizes");
  if (make_degenerate && m_in < 2 && m_eq + m_in < 2)
    throw InvalidInput("random_qp: need at least two constraints to make a "
                       "degenerate problem");
  Rng rng(seed);
  PrimalQP qp;
  const Matrix M = rng.normal_matrix(n, n);
  qp.P = M.transpose() * M + Matrix::Identity(n, n);
  qp.P = 0.5 * (qp.P + qp.P.transpose()).eval();
  qp.q = 3.0 * rng.normal_vector(n);

  const Vector interior = rng.normal_vector(n);
  qp.A = rng.normal_matrix(m_eq, n);
  qp.C = rng.normal_matrix(m_in, n);

  if (make_degenerate) {
    if (m_in >= 2) {
      const Index src = static_cast<Index>(rng.below(static_cast<std::uint64_t>(m_in)));
      const Index dup = (src + 1) % m_in;
      qp.C.row(dup) = qp.C.row(src);
      if (m_in >= 3) {
        const Index neg = (src + 2) % m_in;
        qp.C.row(neg) = -qp.C.row(src);
      }
    } else if (m_in == 1) {
      qp.C.row(0) = qp.A.row(0);
    } else {
      qp.A.row(1) = qp.A.row(0);
    }
  }

  qp.b = qp.A * interior;
  qp.d.resize(m_in);
  for (Index i = 0; i < m_in; ++i)
    qp.d(i) = qp.C.row(i).dot(interior) + rng.uniform(0.05, 1.0);
  return qp;
}

} // namespace qpdas
