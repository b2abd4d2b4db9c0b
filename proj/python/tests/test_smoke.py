import numpy as np
import pytest

import qpdas


def projection():
    return qpdas.PrimalQP(None, np.array([-2.0, 0.0]),
                          C=np.array([[1.0, 0.0]]), d=np.array([1.0]))


def test_projection_example():
    rep = qpdas.solve(projection())
    assert rep["status"] == "Optimal"
    np.testing.assert_allclose(rep["x"], [1.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(rep["mu_in"], [1.0], atol=1e-12)


def test_dual_only_has_no_primal():
    rep = qpdas.solve(projection(), dual_only=True)
    assert rep["x"] is None
    assert rep["status"] == "Optimal"


def test_mpc_smartstart_needs_fewer_iterations():
    qp = qpdas.mpc_problem()
    assert (qp.n, qp.m_in) == (60, 240)
    cold = qpdas.solve(qp, smartstart=False)
    warm = qpdas.solve(qp)
    assert cold["status"] == warm["status"] == "Optimal"
    assert warm["outer_iters"] < cold["outer_iters"]
    np.testing.assert_allclose(warm["x"], cold["x"], atol=1e-6)


def test_polytope_matches_oracle_kkt():
    qp = qpdas.polytope_problem(n=200, m=20, seed=4)
    rep = qpdas.solve(qp)
    assert rep["status"] == "Optimal"
    x = rep["x"]
    assert np.max(qp.C @ x - qp.d) <= 1e-9
    assert np.min(rep["mu_in"]) >= -1e-12
    np.testing.assert_allclose(x + qp.q + qp.C.T @ rep["mu_in"], 0, atol=1e-8)


def test_random_problem_against_oracle():
    qp = qpdas.random_problem(seed=5, n=5, m_eq=1, m_in=4)
    ref = qpdas.oracle_solve(qp)
    assert ref["certified"]
    rep = qpdas.solve(qp)
    assert rep["status"] == "Optimal"
    assert qp.objective(rep["x"]) == pytest.approx(ref["objective"], abs=1e-7)


def test_infeasible_raises():
    qp = qpdas.PrimalQP(None, np.zeros(2), A=np.array([[1.0, 1.0], [1.0, 1.0]]),
                        b=np.array([0.0, 1.0]))
    with pytest.raises(qpdas.UnboundedDual):
        qpdas.solve(qp)


def test_invalid_problem_raises():
    with pytest.raises(qpdas.QpdasError):
        qpdas.PrimalQP(None, np.zeros(2), C=np.ones((1, 3)), d=np.ones(1))


def test_masked_factor_update_and_refine():
    rng = np.random.default_rng(0)
    B = rng.standard_normal((6, 6))
    G = B @ B.T + np.eye(6)
    f = qpdas.MaskedFactor(G)
    f.add_index(2)
    f.add_index(4)
    assert f.mask == [2, 4]
    assert f.consistency_error() < 1e-10
    Gbar = qpdas.build_masked(G, [2, 4])
    L = f.factor
    np.testing.assert_allclose(L @ L.T, Gbar + f.epsilon * np.eye(6), atol=1e-10)
    f.remove_index(2)
    assert f.consistency_error() < 1e-10
    rhs = rng.standard_normal(6)
    kind, p, iters = qpdas.refine(f, rhs)
    assert kind == "Solution"
    assert iters >= 1


def test_dual_solve_direct():
    G, h, m_eq, m_in = qpdas.build_dual(projection())
    out = qpdas.solve_dual(G, h, m_eq)
    assert out["status"] == "Optimal"
    np.testing.assert_allclose(out["mu"], [1.0], atol=1e-12)


def test_round_trip(tmp_path):
    qp = qpdas.random_problem(seed=2, n=4, m_eq=1, m_in=3)
    path = str(tmp_path / "p.json")
    qpdas.write_problem(qp, path)
    back = qpdas.read_problem(path)
    np.testing.assert_array_equal(back.C, qp.C)
    np.testing.assert_array_equal(back.q, qp.q)
