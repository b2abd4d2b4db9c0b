"""Dual active-set solver for convex quadratic programs.

    minimize    1/2 x'Px + q'x
    subject to  Ax = b,  Cx <= d

The solver runs an active-set method on the dual problem with a single
masked Cholesky factor updated by rank-one modifications. Singular
subproblems are handled by proximal-point refinement, which returns
either a solution or a zero-curvature descent direction.
"""

import json

import numpy as np

from ._qpdas import (
    DEFAULT_EPSILON,
    InvalidInput,
    InvalidProblem,
    MaskedFactor,
    NoConvergence,
    NumericalBreakdown,
    ParseError,
    PreconditionError,
    PrimalQP,
    QpdasError,
    UnboundedDual,
    build_dual,
    build_masked,
    mpc_problem,
    oracle_solve,
    polytope_problem,
    random_problem,
    read_problem,
    refine,
    write_problem,
)
from ._qpdas import _solve, _solve_dual

__all__ = [
    "DEFAULT_EPSILON",
    "InvalidInput",
    "InvalidProblem",
    "MaskedFactor",
    "NoConvergence",
    "NumericalBreakdown",
    "ParseError",
    "PreconditionError",
    "PrimalQP",
    "QpdasError",
    "UnboundedDual",
    "build_dual",
    "build_masked",
    "mpc_problem",
    "oracle_solve",
    "polytope_problem",
    "random_problem",
    "read_problem",
    "refine",
    "solve",
    "solve_dual",
    "write_problem",
]

_ARRAY_FIELDS = ("x", "mu_eq", "mu_in")


def solve(problem, *, smartstart=True, epsilon=DEFAULT_EPSILON, max_iters=0,
          dual_only=False):
    """Solve a PrimalQP and return the report as a dict.

    x, mu_eq and mu_in are numpy arrays (x is None with dual_only).
    Raises UnboundedDual when the constraints are infeasible.
    """
    report = json.loads(_solve(problem, smartstart=smartstart, epsilon=epsilon,
                               max_iters=max_iters, dual_only=dual_only))
    for key in _ARRAY_FIELDS:
        if report.get(key) is not None:
            report[key] = np.asarray(report[key], dtype=float)
    return report


def solve_dual(G, h, m_eq=0, *, smartstart=True, epsilon=DEFAULT_EPSILON,
               max_iters=0):
    """Minimize 1/2 mu'G mu + h'mu with mu[m_eq:] >= 0."""
    return _solve_dual(np.asarray(G, dtype=float), np.asarray(h, dtype=float),
                       m_eq, smartstart=smartstart, epsilon=epsilon,
                       max_iters=max_iters)
