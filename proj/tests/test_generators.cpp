#include "support.hpp"

#include "qpdas/errors.hpp"
#include "qpdas/generators.hpp"
#include "qpdas/solver.hpp"

#include <doctest.h>

#include <chrono>

using namespace qpdas;
using namespace qpdas::testing;

namespace {

/// Sum over k = 1..N of x[k]'Q x[k] + u[k-1]'R u[k-1] by forward simulation.
double
simulated_cost(const MpcSpec& s, const Vector& u_bar)
{
  const Index nu = s.B_dyn.cols();
  Vector x = s.x0;
  double J = 0.0;
  for (Index k = 0; k < s.horizon; ++k) {
    const Vector u = u_bar.segment(k * nu, nu);
    x = s.A_dyn * x + s.B_dyn * u;
    J += x.dot(s.Q * x) + u.dot(s.R * u);
  }
  return J;
}

bool
bounds_hold_by_simulation(const MpcSpec& s, const Vector& u_bar)
{
  const Index nu = s.B_dyn.cols();
  Vector x = s.x0;
  for (Index k = 0; k < s.horizon; ++k) {
    x = s.A_dyn * x + s.B_dyn * u_bar.segment(k * nu, nu);
    if ((x - s.u_x).maxCoeff() > 0.0 || (-s.u_x - x).maxCoeff() > 0.0)
      return false;
  }
  return true;
}

double
condition_number(const Matrix& S)
{
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

} // namespace

TEST_CASE("AFTI-16 model data")
{
  const MpcSpec s = MpcSpec::afti16();
  Matrix A(4, 4);
  A << 0.999, -3.008, -0.113, -1.608, 0, 0.986, 0.048, 0, 0, 2.083, 1.009, 0,
    0, 0.053, 0.050, 1;
  Matrix B(4, 2);
  B << -0.080, -0.635, -0.029, -0.014, -0.868, -0.092, -0.022, -0.002;
  CHECK(s.A_dyn == A);
  CHECK(s.B_dyn == B);
  CHECK(s.horizon == 30);
  CHECK(s.Q == Matrix::Identity(4, 4));
  CHECK(s.R == Matrix::Identity(2, 2));
  CHECK(s.u_x == Vector::Constant(4, 0.2));
}

TEST_CASE("default MPC problem dimensions and conditioning")
{
  const MpcSpec s = MpcSpec::afti16();
  const PrimalQP qp = build_mpc(s);
  CHECK(qp.n() == 60);
  CHECK(qp.m_eq() == 0);
  CHECK(qp.m_in() == 240);
  CHECK(qp.C.cols() == 60);

  const MpcPrediction pr = condense_mpc(s);
  CHECK(pr.F.rows() == 60);
  const double kappa = condition_number(pr.F);
  CHECK(kappa >= 1e7);
  CHECK(kappa <= 1e9);
  CHECK((qp.P - 2.0 * pr.F).norm() == 0.0);
  CHECK((qp.q - 2.0 * pr.G_x * s.x0).norm() <= 1e-14 * (1.0 + qp.q.norm()));
}

TEST_CASE("the default initial state makes state bounds bind")
{
  const MpcSpec s = MpcSpec::afti16();
  const PrimalQP qp = build_mpc(s);
  const Vector u_free = qp.P.llt().solve(-qp.q);
  CHECK_FALSE(bounds_hold_by_simulation(s, u_free));
  CHECK((qp.C * u_free - qp.d).maxCoeff() > 0.0);
}

TEST_CASE("single-step condensing")
{
  MpcSpec s = MpcSpec::afti16(1);
  const MpcPrediction pr = condense_mpc(s);
  const Matrix F = s.B_dyn.transpose() * s.Q * s.B_dyn + s.R;
  CHECK((pr.F - F).norm() <= 1e-14);
  Rng rng(1);
  const Vector u = rng.normal_vector(2);
  const double J = u.dot(pr.F * u) + 2.0 * u.dot(pr.G_x * s.x0) +
                   s.x0.dot(pr.H * s.x0);
  CHECK(J == doctest::Approx(simulated_cost(s, u)).epsilon(1e-12));
}

TEST_CASE("condensed cost matches simulation")
{
  Rng rng(2);
  for (Index N = 1; N <= 10; ++N) {
    MpcSpec s = MpcSpec::afti16(N);
    s.x0 = rng.normal_vector(4);
    const MpcPrediction pr = condense_mpc(s);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector u = rng.normal_vector(2 * N);
      const double J = u.dot(pr.F * u) + 2.0 * u.dot(pr.G_x * s.x0) +
                       s.x0.dot(pr.H * s.x0);
      const double ref = simulated_cost(s, u);
      CHECK(std::abs(J - ref) <= 1e-8 * std::abs(ref));
    }
  }
}

TEST_CASE("one-sided encoding is equivalent to the state bounds")
{
  Rng rng(3);
  MpcSpec s = MpcSpec::afti16(8);
  s.x0 = Vector::Zero(4);
  const PrimalQP qp = build_mpc(s);
  int inside = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const double scale = std::pow(10.0, rng.uniform(-4.0, -1.0));
    const Vector u = scale * rng.normal_vector(16);
    const bool encoded = (qp.C * u - qp.d).maxCoeff() <= 0.0;
    const bool simulated = bounds_hold_by_simulation(s, u);
    CHECK(encoded == simulated);
    inside += simulated ? 1 : 0;
  }
  CHECK(inside > 0);
  CHECK(inside < 400);
}

TEST_CASE("invalid MPC specs")
{
  MpcSpec s = MpcSpec::afti16();
  s.horizon = 0;
  CHECK_THROWS_AS(build_mpc(s), InvalidInput);
  s = MpcSpec::afti16();
  s.R = Matrix::Zero(2, 2);
  s.Q = Matrix::Zero(4, 4);
  CHECK_THROWS_AS(build_mpc(s), InvalidInput);
}

TEST_CASE("polytope generator")
{
  PolytopeSpec spec;
  const PrimalQP qp = build_polytope(spec);
  CHECK(qp.identity_P);
  CHECK(qp.P.size() == 0);
  CHECK(qp.n() == 1000);
  CHECK(qp.m_in() == 50);
  CHECK((qp.C.rowwise().norm().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK(qp.d.minCoeff() > 0.0);

  const Vector c = -qp.q;
  const Index violated = ((qp.C * c - qp.d).array() > 0.0).count();
  CHECK(violated == 25);

  const PrimalQP again = build_polytope(spec);
  CHECK(again.C == qp.C);
  CHECK(again.d == qp.d);
}

TEST_CASE("polytope active fraction at the projection")
{
  const PrimalQP qp = build_polytope(PolytopeSpec{});
  const SolveResult r = solve(qp);
  REQUIRE(r.dual.status == SolveStatus::Optimal);
  const Vector slack = qp.C * r.primal->x - qp.d;
  const Index active = (slack.array().abs() <= 1e-9).count();
  CHECK(active >= 15);
  CHECK(active <= 35);
}

TEST_CASE("point inside the polytope projects to itself")
{
  PrimalQP qp = build_polytope(PolytopeSpec{ 200, 20, 3, 0.5 });
  qp.q = Vector::Zero(qp.n());
  const SolveResult r = solve(qp);
  REQUIRE(r.dual.status == SolveStatus::Optimal);
  CHECK(r.primal->x.norm() == 0.0);
  CHECK(r.dual.mu_star.norm() == 0.0);
}

TEST_CASE("large polytope builds quickly")
{
  const auto t0 = std::chrono::steady_clock::now();
  const PrimalQP qp = build_polytope(PolytopeSpec{ 10000, 500, 1, 0.5 });
  const double sec =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
  CHECK(qp.C.rows() == 500);
  CHECK(sec < 5.0);
}

TEST_CASE("invalid polytope specs")
{
  CHECK_THROWS_AS(build_polytope(PolytopeSpec{ 10, 0, 1, 0.5 }), InvalidInput);
  CHECK_THROWS_AS(build_polytope(PolytopeSpec{ 10, 5, 1, 1.0 }), InvalidInput);
}
