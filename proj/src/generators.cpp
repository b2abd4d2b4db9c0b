#include "qpdas/generators.hpp"

#include "qpdas/errors.hpp"
#include "qpdas/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qpdas {

MpcSpec
MpcSpec::afti16(Index horizon)
{
  MpcSpec s;
  s.A_dyn.resize(4, 4);
  s.A_dyn << 0.999, -3.008, -0.113, -1.608, //
    0.0, 0.986, 0.048, 0.0,                 //
    0.0, 2.083, 1.009, 0.0,                 //
    0.0, 0.053, 0.050, 1.0;
  s.B_dyn.resize(4, 2);
  s.B_dyn << -0.080, -0.635, //
    -0.029, -0.014,          //
    -0.868, -0.092,          //
    -0.022, -0.002;
  s.horizon = horizon;
  s.Q = Matrix::Identity(4, 4);
  s.R = Matrix::Identity(2, 2);
  s.x0 = Vector::Zero(4);
  s.x0 << 0.0, 0.0, 0.0, 0.2;
  s.u_x = Vector::Constant(4, 0.2);
  return s;
}

void
MpcSpec::validate() const
{
  const Index nx = A_dyn.rows();
  const Index nu = B_dyn.cols();
  if (nx == 0 || A_dyn.cols() != nx || B_dyn.rows() != nx || nu == 0)
    throw InvalidInput("MpcSpec: A must be square and B must have as many "
                       "rows as A");
  if (horizon < 1)
    throw InvalidInput("MpcSpec: horizon must be at least 1");
  if (Q.rows() != nx || Q.cols() != nx || R.rows() != nu || R.cols() != nu)
    throw InvalidInput("MpcSpec: weight matrices have the wrong size");
  if (x0.size() != nx || u_x.size() != nx)
    throw InvalidInput("MpcSpec: x0 and u_x must match the state dimension");
  if ((Q - Q.transpose()).norm() > 1e-12 * (1.0 + Q.norm()) ||
      (R - R.transpose()).norm() > 1e-12 * (1.0 + R.norm()))
    throw InvalidInput("MpcSpec: Q and R must be symmetric");
}

MpcPrediction
condense_mpc(const MpcSpec& spec)
{
  spec.validate();
  const Index nx = spec.A_dyn.rows();
  const Index nu = spec.B_dyn.cols();
  const Index N = spec.horizon;

  MpcPrediction pr;
  pr.Phi = Matrix::Zero(N * nx, nx);
  pr.Gamma = Matrix::Zero(N * nx, N * nu);

  // powers[j] = A^j
  std::vector<Matrix> powers(static_cast<std::size_t>(N + 1));
  powers[0] = Matrix::Identity(nx, nx);
  for (Index j = 1; j <= N; ++j)
    powers[static_cast<std::size_t>(j)] =
      spec.A_dyn * powers[static_cast<std::size_t>(j - 1)];

  for (Index k = 1; k <= N; ++k) {
    pr.Phi.middleRows((k - 1) * nx, nx) = powers[static_cast<std::size_t>(k)];
    for (Index j = 0; j < k; ++j)
      pr.Gamma.block((k - 1) * nx, j * nu, nx, nu) =
        powers[static_cast<std::size_t>(k - 1 - j)] * spec.B_dyn;
  }

  Matrix Qbar = Matrix::Zero(N * nx, N * nx);
  Matrix Rbar = Matrix::Zero(N * nu, N * nu);
  for (Index k = 0; k < N; ++k) {
    Qbar.block(k * nx, k * nx, nx, nx) = spec.Q;
    Rbar.block(k * nu, k * nu, nu, nu) = spec.R;
  }
  const Matrix QG = Qbar * pr.Gamma;
  pr.F = pr.Gamma.transpose() * QG + Rbar;
  pr.F = 0.5 * (pr.F + pr.F.transpose()).eval();
  pr.G_x = QG.transpose() * pr.Phi;
  pr.H = pr.Phi.transpose() * Qbar * pr.Phi;
  return pr;
}

PrimalQP
build_mpc(const MpcSpec& spec)
{
  const MpcPrediction pr = condense_mpc(spec);
  Eigen::LLT<Matrix> llt(pr.F);
  if (llt.info() != Eigen::Success)
    throw InvalidInput("build_mpc: condensed Hessian is not positive definite");

  const Index nx = spec.A_dyn.rows();
  const Index N = spec.horizon;
  const Index rows = N * nx;
  const Vector offset = pr.Phi * spec.x0;
  const Vector upper = spec.u_x.replicate(N, 1);

  PrimalQP qp;
  qp.P = 2.0 * pr.F;
  qp.q = 2.0 * pr.G_x * spec.x0;
  qp.A.resize(0, pr.F.cols());
  qp.b.resize(0);
  qp.C.resize(2 * rows, pr.Gamma.cols());
  qp.C.topRows(rows) = pr.Gamma;
  qp.C.bottomRows(rows) = -pr.Gamma;
  qp.d.resize(2 * rows);
  qp.d.head(rows) = upper - offset;
  qp.d.tail(rows) = upper + offset;
  return qp;
}

void
PolytopeSpec::validate() const
{
  if (n < 1 || m < 1)
    throw InvalidInput("PolytopeSpec: n and m must be positive");
  if (!(target_active_fraction > 0.0 && target_active_fraction < 1.0))
    throw InvalidInput("PolytopeSpec: target_active_fraction must lie in (0, 1)");
}

PrimalQP
build_polytope(const PolytopeSpec& spec)
{
  spec.validate();
  Rng rng(spec.seed);
  const Vector c = rng.normal_vector(spec.n);
  Matrix C = rng.normal_matrix(spec.m, spec.n);
  C.rowwise().normalize();

  std::vector<Index> order(static_cast<std::size_t>(spec.m));
  std::iota(order.begin(), order.end(), Index{ 0 });
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);
  const auto violated = static_cast<std::size_t>(
    std::lround(spec.target_active_fraction * static_cast<double>(spec.m)));

  Vector d(spec.m);
  for (Index i = 0; i < spec.m; ++i) {
    double v = C.row(i).dot(c);
    if (v < 0.0) {
      C.row(i) *= -1.0;
      v = -v;
    }
    d(i) = std::max(v, 1e-3);
  }
  for (std::size_t j = 0; j < order.size(); ++j) {
    const Index i = order[j];
    if (j < violated)
      d(i) *= rng.uniform(0.2, 0.8);
    else
      d(i) *= rng.uniform(1.2, 2.0);
  }

  PrimalQP qp;
  qp.identity_P = true;
  qp.q = -c;
  qp.A.resize(0, spec.n);
  qp.b.resize(0);
  qp.C = std::move(C);
  qp.d = std::move(d);
  return qp;
}

} // namespace qpdas
