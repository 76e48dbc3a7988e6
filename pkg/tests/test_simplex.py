from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import linprog

from wsnlife.errors import InfeasibleError, UnboundedError
from wsnlife.simplex import linprog_bland


def test_small_lp():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6  ->  x = 8/5, y = 6/5
    res = linprog_bland([-1, -1], [[1, 2], [3, 1]], [4, 6], exact=True)
    assert list(res.x) == [F(8, 5), F(6, 5)]
    assert res.objective == F(-14, 5)
    assert all(v == 0 for v in res.residuals.values())
    # strong duality: c.x = b.y
    assert res.objective == sum(y * b for y, b in zip(res.duals, [4, 6]))


def test_equality_and_negative_rhs():
    res = linprog_bland([1, 1], [[-1, 0]], [-1], [[1, -1]], [0])
    assert res.x == pytest.approx([1, 1])


def test_infeasible_has_farkas_certificate():
    A_ub = [[1, 1]]
    b_ub = [1]
    A_eq = [[1, 0]]
    b_eq = [2]
    with pytest.raises(InfeasibleError) as info:
        linprog_bland([0, 0], A_ub, b_ub, A_eq, b_eq, exact=True)
    # Farkas: y.A <= 0 on x, y <= 0 on the <= rows (their slacks), y.b > 0
    y = info.value.certificate
    A = np.array(A_ub + A_eq, dtype=object)
    assert all(v <= 0 for v in y @ A)
    assert y[0] <= 0
    assert y @ np.array(b_ub + b_eq) > 0


def test_unbounded():
    with pytest.raises(UnboundedError):
        linprog_bland([-1, 0], [[0, 1]], [1])


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates
    c = [F(-3, 4), 150, F(-1, 50), 6]
    A = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    res = linprog_bland(c, A, [0, 0, 1], exact=True)
    assert res.objective == F(-1, 20)


def test_redundant_equalities():
    res = linprog_bland([1, 2], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2], exact=True)
    assert list(res.x) == [1, 0]


@pytest.mark.parametrize("seed", range(25))
def test_random_lps_agree_with_highs(seed):
    rng = np.random.default_rng(seed)
    m, n, k = rng.integers(2, 7), rng.integers(2, 8), rng.integers(0, 3)
    A_ub = rng.uniform(-1, 3, size=(m, n))
    b_ub = rng.uniform(0, 5, size=m)
    x0 = rng.uniform(0, 1, size=n)
    A_eq = rng.uniform(-1, 2, size=(k, n))
    b_eq = A_eq @ x0
    # a feasible point exists (x0 scaled in) and the box keeps it bounded
    A_ub = np.vstack([A_ub, np.eye(n)])
    b_ub = np.concatenate([np.maximum(b_ub, A_ub[:m] @ x0), np.full(n, 10.0)])
    c = rng.normal(size=n)
    ref = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq if k else None, b_eq=b_eq if k else None,
                  bounds=[(0, None)] * n, method="highs")
    res = linprog_bland(c, A_ub, b_ub, A_eq if k else None, b_eq if k else None)
    assert res.objective == pytest.approx(ref.fun, rel=1e-9, abs=1e-9)
