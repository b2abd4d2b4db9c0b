#include "qpdas/transform.hpp"

#include "qpdas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpdas {

namespace {

void
require(bool ok, const std::string& msg)
{
  if (!ok)
    throw InvalidInput("PrimalQP: " + msg);
}

} // namespace

double
PrimalQP::objective(const Vector& x) const
{
  const double quad = identity_P ? x.squaredNorm() : x.dot(P * x);
  return 0.5 * quad + q.dot(x);
}

void
PrimalQP::validate() const
{
  const Index nn = n();
  require(nn > 0, "q must be non-empty");
  if (identity_P) {
    require(P.size() == 0 || (P.rows() == nn && P.cols() == nn),
            "P must be empty or n x n when identity_P is set");
  } else {
    require(P.rows() == nn && P.cols() == nn,
            "P must be " + std::to_string(nn) + "x" + std::to_string(nn));
    require(P.allFinite(), "P has non-finite entries");
    require((P - P.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * (1.0 + P.cwiseAbs().maxCoeff()),
            "P is not symmetric");
  }
  require(A.rows() == b.size(), "A and b disagree on m_eq");
  require(A.rows() == 0 || A.cols() == nn, "A must have n columns");
  require(C.rows() == d.size(), "C and d disagree on m_in");
  require(C.rows() == 0 || C.cols() == nn, "C must have n columns");
  require(q.allFinite() && A.allFinite() && b.allFinite() && C.allFinite() &&
            d.allFinite(),
          "non-finite data");
}

PFactor::PFactor(const PrimalQP& qp)
  : identity_(qp.identity_P)
{
  if (identity_)
    return;
  llt_.compute(qp.P);
  if (llt_.info() != Eigen::Success)
    throw InvalidProblem("P is not positive definite");
  const auto diag = llt_.matrixLLT().diagonal();
  if (!(diag.minCoeff() > 0.0) || !diag.allFinite())
    throw InvalidProblem("P is not positive definite");
}

void
PFactor::solve_in_place(Eigen::Ref<Matrix> B) const
{
  if (!identity_)
    llt_.solveInPlace(B);
}

Vector
PFactor::solve(const Vector& v) const
{
  if (identity_)
    return v;
  return llt_.solve(v);
}

Matrix
PFactor::half_solve(const Matrix& B) const
{
  if (identity_)
    return B;
  return llt_.matrixL().solve(B);
}

DualProblem
build_dual(const PrimalQP& qp)
{
  qp.validate();
  DualProblem out{ DualQP{}, PFactor(qp) };
  const Index n = qp.n();
  const Index me = qp.m_eq();
  const Index mi = qp.m_in();
  const Index m = me + mi;

  Matrix Mt(n, m);
  if (me > 0)
    Mt.leftCols(me) = qp.A.transpose();
  if (mi > 0)
    Mt.rightCols(mi) = qp.C.transpose();

  // W = L^{-1} M' so that G = W'W.
  const Matrix W = out.pfactor.half_solve(Mt);
  Matrix G = Matrix::Zero(m, m);
  if (m > 0) {
    G.selfadjointView<Eigen::Lower>().rankUpdate(W.transpose());
    Matrix full = G.selfadjointView<Eigen::Lower>();
    G = std::move(full);
  }

  const Vector Pinv_q = out.pfactor.solve(qp.q);
  Vector h(m);
  if (me > 0)
    h.head(me) = qp.A * Pinv_q + qp.b;
  if (mi > 0)
    h.tail(mi) = qp.C * Pinv_q + qp.d;

  out.dual.G = std::move(G);
  out.dual.h = std::move(h);
  out.dual.m_eq = me;
  out.dual.m_in = mi;
  return out;
}

PrimalSolution
recover_primal(const PrimalQP& qp, const PFactor& pf, const Vector& mu)
{
  const Index me = qp.m_eq();
  const Index mi = qp.m_in();
  if (mu.size() != me + mi)
    throw InvalidInput("recover_primal: mu has length " +
                       std::to_string(mu.size()) + ", expected " +
                       std::to_string(me + mi));
  PrimalSolution s;
  s.mu_eq = mu.head(me);
  s.mu_in = mu.tail(mi);

  Vector rhs = qp.q;
  if (me > 0)
    rhs.noalias() += qp.A.transpose() * s.mu_eq;
  if (mi > 0)
    rhs.noalias() += qp.C.transpose() * s.mu_in;
  s.x = -pf.solve(rhs);

  const Vector Px = qp.identity_P ? s.x : Vector(qp.P * s.x);
  s.stationarity_residual = (Px + rhs).lpNorm<Eigen::Infinity>();
  if (me > 0)
    s.primal_residuals.eq_violation =
      (qp.A * s.x - qp.b).lpNorm<Eigen::Infinity>();
  if (mi > 0) {
    const Vector slack = qp.C * s.x - qp.d;
    s.primal_residuals.ineq_violation = std::max(0.0, slack.maxCoeff());
    s.complementarity = s.mu_in.cwiseProduct(slack).lpNorm<Eigen::Infinity>();
  }
  s.objective = 0.5 * s.x.dot(Px) + qp.q.dot(s.x);
  return s;
}

} // namespace qpdas
