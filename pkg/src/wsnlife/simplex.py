"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Solves ``min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0`` either in
float64 or, with ``exact=True``, in exact rational arithmetic (numpy object
arrays of Fractions). Every returned optimum carries the duals and the
residuals of its optimality certificate (primal feasibility, dual
feasibility, complementary slackness), and is rejected if they are not small.

Float mode equilibrates rows and columns and periodically rebuilds the
tableau from the original data and the current basis, since Bland's rule
pivots on whatever element it is handed and lets round-off accumulate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._numeric import to_fraction
from .errors import InfeasibleError, SolverError, UnboundedError

CERTIFICATE_TOL = 1e-9
PIVOT_EPS = 1e-9
REINVERT_EVERY = 40
MAX_ITERATIONS = 100_000


@dataclass
class LPResult:
    x: np.ndarray
    objective: object
    duals: np.ndarray  # one per row of [A_ub; A_eq], original signs
    residuals: dict
    iterations: int


def _matrix(rows, n_cols, exact):
    if rows is None or len(rows) == 0:
        return np.zeros((0, n_cols), dtype=object if exact else float)
    if exact:
        return np.array([[to_fraction(v) for v in row] for row in rows], dtype=object).reshape(-1, n_cols)
    return np.asarray(rows, dtype=float).reshape(-1, n_cols)


def _vector(vals, exact):
    if vals is None:
        return np.zeros(0, dtype=object if exact else float)
    if exact:
        return np.array([to_fraction(v) for v in vals], dtype=object)
    return np.asarray(vals, dtype=float).reshape(-1)


class _Tableau:
    """Tableau over [A | I_art | b] with b >= 0, started from the identity columns ``basis``."""

    def __init__(self, A, b, basis, exact):
        m, n = A.shape
        self.exact = exact
        self.eps = 0 if exact else PIVOT_EPS
        eye = np.eye(m, dtype=float) if not exact else np.array(
            [[Fraction(int(i == j)) for j in range(m)] for i in range(m)], dtype=object).reshape(m, m)
        self.full = np.concatenate([A, eye, b.reshape(-1, 1)], axis=1)
        self.rows = list(range(m))
        self.T = self.full.copy()
        self.basis = list(basis)
        # column of the starting identity for each row; these columns of T hold B^{-1}
        self.identity_cols = list(basis)
        self.iterations = 0
        self._since_reinvert = 0

    def pivot(self, row, col):
        T = self.T
        T[row] = T[row] / T[row, col]
        others = T[:, col].copy()
        others[row] = 0
        T -= np.outer(others, T[row])
        if not self.exact:
            T[:, col] = 0.0
            T[row, col] = 1.0
        self.basis[row] = col
        self.iterations += 1
        self._since_reinvert += 1

    def drop_rows(self, keep):
        self.T = self.T[keep]
        self.basis = [self.basis[i] for i in keep]
        self.rows = [self.rows[i] for i in keep]

    def reinvert(self):
        if self.exact or not self.rows:
            return
        data = self.full[self.rows]
        B = data[:, self.basis]
        T = np.linalg.solve(B, data)
        T[:, self.basis] = np.eye(len(self.basis))
        rhs = T[:, -1]
        rhs[(rhs < 0) & (rhs > -1e-9)] = 0.0
        self.T = T
        self._since_reinvert = 0

    def reduced_costs(self, cost):
        obj = np.zeros(self.T.shape[1], dtype=self.T.dtype)
        if self.basis:
            obj = -(cost[self.basis] @ self.T)
        obj[:-1] += cost
        return obj

    def duals(self, cost):
        if not self.rows:
            return np.zeros(len(self.identity_cols), dtype=self.T.dtype)
        return cost[self.basis] @ self.T[:, self.identity_cols]

    def run(self, cost, allowed):
        """Bland's rule: lowest-index improving column, lowest-index basic variable on ratio ties."""
        while True:
            if self.iterations > MAX_ITERATIONS:
                raise SolverError("simplex iteration limit reached")
            if self._since_reinvert >= REINVERT_EVERY:
                self.reinvert()
            obj = self.reduced_costs(cost)
            improving = np.nonzero((obj[:-1] < -self.eps) & allowed)[0]
            if improving.size == 0:
                if self._since_reinvert and not self.exact:
                    # confirm optimality on a freshly rebuilt tableau
                    self.reinvert()
                    continue
                return
            col = int(improving[0])
            T = self.T
            column = T[:, col]
            rows = np.nonzero(column > self.eps)[0]
            if rows.size == 0:
                raise UnboundedError(f"objective unbounded below along column {col}")
            ratios = [T[r, -1] / column[r] for r in rows]
            best = min(ratios)
            slack = 0 if self.exact else 1e-12 * (1 + abs(best))
            ties = [r for r, q in zip(rows, ratios) if q <= best + slack]
            row = min(ties, key=lambda r: self.basis[r])
            self.pivot(int(row), col)


def _equilibrate(A):
    """Row and column scale factors bringing every nonzero row/column max to 1."""
    m, n = A.shape
    r = np.ones(m)
    s = np.ones(n)
    if A.size:
        rmax = np.abs(A).max(axis=1)
        r[rmax > 0] = 1 / rmax[rmax > 0]
        cmax = np.abs(A * r[:, None]).max(axis=0)
        s[cmax > 0] = 1 / cmax[cmax > 0]
    return r, s


def linprog_bland(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, exact=False) -> LPResult:
    c = _vector(c, exact)
    n = c.size
    A_ub = _matrix(A_ub, n, exact)
    A_eq = _matrix(A_eq, n, exact)
    b_ub = _vector(b_ub if b_ub is not None else [], exact)
    b_eq = _vector(b_eq if b_eq is not None else [], exact)
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    if b_ub.size != m_ub or b_eq.size != m_eq:
        raise ValueError("right-hand side length does not match the constraint rows")
    dtype = object if exact else float
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0

    # standard form: [A_ub I; A_eq 0] (x, s) = b
    n_std = n + m_ub
    m = m_ub + m_eq
    A = np.full((m, n_std), zero, dtype=dtype)
    A[:m_ub, :n] = A_ub
    A[m_ub:, :n] = A_eq
    for i in range(m_ub):
        A[i, n + i] = one
    b = np.concatenate([b_ub, b_eq]).astype(dtype)
    cost = np.concatenate([c, np.full(m_ub, zero, dtype=dtype)])
    if not exact and not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(cost))):
        raise ValueError("LP data contains NaN or infinite coefficients")

    if exact:
        rs, cs = np.ones(m, dtype=int), np.ones(n_std, dtype=int)
    else:
        rs, cs = _equilibrate(A)
    sign = np.array([-1 if bi < 0 else 1 for bi in b], dtype=int)
    A_s = A * (rs * sign)[:, None] * cs[None, :] if m else A
    b_s = b * rs * sign if m else b
    cost_s = cost * cs
    # rows A_ub x <= b with b >= 0 start on their slack; the rest need an artificial
    start = [n + i if i < m_ub and sign[i] > 0 else n_std + i for i in range(m)]
    tab = _Tableau(A_s, b_s, start, exact)
    scale = float(max([1] + [abs(v) for v in b]))

    # phase 1
    cost1 = np.concatenate([np.full(n_std, zero, dtype=dtype), np.full(m, one, dtype=dtype)])
    used_art = np.zeros(n_std + m, dtype=bool)
    used_art[[c for c in start if c >= n_std]] = True
    cost1[n_std:][~used_art[n_std:]] = zero
    allowed1 = np.arange(n_std + m) < n_std
    tab.run(cost1, allowed1)
    infeas = sum((tab.T[i, -1] for i, bv in enumerate(tab.basis) if bv >= n_std), zero)
    if infeas > (0 if exact else CERTIFICATE_TOL):
        y1 = tab.duals(cost1)
        raise InfeasibleError(f"constraints are infeasible (phase-1 residual {float(infeas):.3g})",
                              certificate=y1 * rs * sign)

    # drive zero-level artificials out of the basis; drop rows that are redundant
    keep = []
    for i in range(len(tab.basis)):
        if tab.basis[i] >= n_std:
            row = tab.T[i, :n_std]
            cols = [j for j in range(n_std) if row[j] != 0] if exact else np.nonzero(np.abs(row) > PIVOT_EPS)[0]
            if len(cols):
                tab.pivot(i, int(cols[0]))
                keep.append(i)
        else:
            keep.append(i)
    tab.drop_rows(keep)
    tab.reinvert()

    # phase 2; artificial columns stay frozen in the tableau, where they hold B^{-1}
    cost2 = np.concatenate([cost_s, np.full(m, zero, dtype=dtype)])
    tab.run(cost2, allowed1)

    x_s = np.full(n_std, zero, dtype=dtype)
    for i, bv in enumerate(tab.basis):
        x_s[bv] = tab.T[i, -1]
    y_s = tab.duals(cost2) if tab.rows else np.full(m, zero, dtype=dtype)
    x_std = x_s * cs
    y = y_s * rs * sign if m else y_s

    residuals = _certificate(A, b, cost, x_std, y)
    if not exact:
        cmax = float(max([1] + [abs(v) for v in cost]))
        bad = {k: v for k, v in residuals.items() if v > CERTIFICATE_TOL * scale * cmax}
    else:
        bad = {k: v for k, v in residuals.items() if v != 0}
    if bad:
        raise SolverError(f"optimality certificate failed: {bad}")
    x = x_std[:n]
    return LPResult(x=x, objective=c @ x if n else zero, duals=y, residuals=residuals,
                    iterations=tab.iterations)


def _certificate(A, b, cost, x, y) -> dict:
    neg_x = max([-v for v in x] + [0])
    primal = max([abs(v) for v in (A @ x - b)] + [neg_x]) if A.shape[0] else neg_x
    rc = cost - A.T @ y if A.shape[0] else cost
    dual = max([-v for v in rc] + [0])
    comp = max([abs(xi * ri) for xi, ri in zip(x, rc)] + [0])
    return {"primal": primal, "dual": dual, "complementarity": comp}
