#include "support.hpp"

#include "qpdas/errors.hpp"
#include "qpdas/oracle.hpp"
#include "qpdas/solver.hpp"
#include "qpdas/transform.hpp"

#include <doctest.h>

using namespace qpdas;
using namespace qpdas::testing;

namespace {

PrimalQP
projection_example(double c0)
{
  PrimalQP p;
  p.P = Matrix::Identity(2, 2);
  p.q = Vector::Zero(2);
  p.q(0) = -c0;
  p.C = Matrix::Zero(1, 2);
  p.C(0, 0) = 1.0;
  p.d = Vector::Ones(1);
  return p;
}

} // namespace

TEST_CASE("build_dual on the projection example")
{
  const DualProblem a = build_dual(projection_example(0.0));
  CHECK(a.dual.G.rows() == 1);
  CHECK(a.dual.G(0, 0) == doctest::Approx(1.0));
  CHECK(a.dual.h(0) == doctest::Approx(1.0));
  CHECK(a.dual.m_eq == 0);
  CHECK(a.dual.m_in == 1);

  const DualProblem b = build_dual(projection_example(2.0));
  CHECK(b.dual.h(0) == doctest::Approx(-1.0));
}

TEST_CASE("dual of a random problem is symmetric PSD and matches the inverse")
{
  Rng rng(9);
  PrimalQP p;
  p.P = random_pd(rng, 7, 0.01, 100.0);
  p.q = rng.normal_vector(7);
  p.A = rng.normal_matrix(2, 7);
  p.b = rng.normal_vector(2);
  p.C = rng.normal_matrix(9, 7);
  p.d = rng.normal_vector(9);
  const DualProblem dp = build_dual(p);
  const Matrix& G = dp.dual.G;
  CHECK((G - G.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10 * G.norm());

  Matrix M(11, 7);
  M << p.A, p.C;
  const Matrix Pinv = p.P.inverse();
  Vector bd(11);
  bd << p.b, p.d;
  CHECK((G - M * Pinv * M.transpose()).norm() <= 1e-10 * G.norm());
  CHECK((dp.dual.h - (M * Pinv * p.q + bd)).norm() <=
        1e-10 * (1.0 + dp.dual.h.norm()));
}

TEST_CASE("identity P is equivalent to an explicit identity")
{
  Rng rng(10);
  PrimalQP p;
  p.identity_P = true;
  p.q = rng.normal_vector(5);
  p.C = rng.normal_matrix(3, 5);
  p.d = rng.normal_vector(3);
  PrimalQP e = p;
  e.identity_P = false;
  e.P = Matrix::Identity(5, 5);
  const DualProblem a = build_dual(p);
  const DualProblem b = build_dual(e);
  CHECK((a.dual.G - b.dual.G).norm() < 1e-14);
  CHECK((a.dual.h - b.dual.h).norm() < 1e-14);
  CHECK(a.pfactor.identity());
}

TEST_CASE("P that is not positive definite is rejected")
{
  PrimalQP p = projection_example(1.0);
  p.P(1, 1) = -1.0;
  CHECK_THROWS_AS(build_dual(p), InvalidProblem);
  p.P(1, 1) = 0.0;
  CHECK_THROWS_AS(build_dual(p), InvalidProblem);
}

TEST_CASE("validation")
{
  PrimalQP p = projection_example(1.0);
  p.d = Vector::Ones(2);
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = projection_example(1.0);
  p.P(0, 1) = 1e-3;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
}

TEST_CASE("recover_primal")
{
  const PrimalQP p = projection_example(2.0);
  const DualProblem dp = build_dual(p);

  SUBCASE("projection onto x0 <= 1")
  {
    const PrimalSolution s = recover_primal(p, dp.pfactor, Vector::Ones(1));
    CHECK(s.x(0) == doctest::Approx(1.0));
    CHECK(s.x(1) == doctest::Approx(0.0));
    CHECK(s.primal_residuals.ineq_violation == 0.0);
    CHECK(s.stationarity_residual < 1e-15);
  }
  SUBCASE("mu = 0 gives the unconstrained minimizer")
  {
    const PrimalSolution s = recover_primal(p, dp.pfactor, Vector::Zero(1));
    CHECK(s.x(0) == doctest::Approx(2.0));
    CHECK(s.primal_residuals.ineq_violation == doctest::Approx(1.0));
  }
  SUBCASE("wrong length")
  {
    CHECK_THROWS_AS(recover_primal(p, dp.pfactor, Vector::Zero(2)),
                    InvalidInput);
  }
}

TEST_CASE("solve and recover against the oracle")
{
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const PrimalQP p = random_qp(seed, 6, seed % 3, 5, seed % 2 == 0);
    const SolveResult r = solve(p);
    REQUIRE(r.dual.status == SolveStatus::Optimal);
    REQUIRE(r.primal.has_value());
    const OracleResult o = enumerate_solve(p);
    REQUIRE(o.certified);
    const PrimalSolution& s = *r.primal;
    CHECK((s.x - o.x).norm() <= 1e-6 * (1.0 + o.x.norm()));
    CHECK((p.A * s.x - p.b).norm() <= 1e-6 * (1.0 + p.b.norm()));
    if (p.m_in() > 0)
      CHECK((p.C * s.x - p.d).maxCoeff() <= 1e-6);
    CHECK(max_kkt_residual(r) <= 1e-6);

    // Strong duality: f(x*) = -(1/2 mu'G mu + h'mu) - 1/2 q'P^{-1}q.
    const double constant = 0.5 * p.q.dot(p.P.llt().solve(p.q));
    CHECK(s.objective ==
          doctest::Approx(-r.dual.objective - constant).epsilon(1e-6));
  }
}

TEST_CASE("empty constraint blocks")
{
  Rng rng(12);
  SUBCASE("only equalities")
  {
    PrimalQP p;
    p.P = random_pd(rng, 4);
    p.q = rng.normal_vector(4);
    p.A = rng.normal_matrix(2, 4);
    p.b = rng.normal_vector(2);
    p.C = Matrix::Zero(0, 4);
    p.d = Vector::Zero(0);
    const SolveResult r = solve(p);
    REQUIRE(r.dual.status == SolveStatus::Optimal);
    CHECK((p.A * r.primal->x - p.b).norm() <= 1e-10);
  }
  SUBCASE("no constraints")
  {
    PrimalQP p;
    p.P = random_pd(rng, 3);
    p.q = rng.normal_vector(3);
    p.A = Matrix::Zero(0, 3);
    p.b = Vector::Zero(0);
    p.C = Matrix::Zero(0, 3);
    p.d = Vector::Zero(0);
    const SolveResult r = solve(p);
    REQUIRE(r.dual.status == SolveStatus::Optimal);
    CHECK((r.primal->x + p.P.llt().solve(p.q)).norm() <= 1e-12);
  }
}

TEST_CASE("contradictory equalities are reported as an unbounded dual")
{
  PrimalQP p;
  p.P = Matrix::Identity(2, 2);
  p.q = Vector::Zero(2);
  p.A.resize(2, 2);
  p.A << 1, 1, 1, 1;
  p.b.resize(2);
  p.b << 0, 1;
  p.C = Matrix::Zero(0, 2);
  p.d = Vector::Zero(0);
  CHECK_THROWS_AS(solve(p), UnboundedDual);
}

TEST_CASE("dual-only skips recovery")
{
  const SolveResult r = solve(projection_example(2.0), SolverConfig{}, true);
  CHECK_FALSE(r.primal.has_value());
  CHECK(r.timings.recover_primal == 0.0);
  CHECK(r.dual.mu_star(0) == doctest::Approx(1.0));
}
