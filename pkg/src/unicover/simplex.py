"""Exact rational simplex (Bland's rule) with incremental column addition.

Everything is a fractions.Fraction; there is no floating point anywhere.
The tableau keeps the initial identity block, so the basis inverse is always
available for pricing new columns and reading off duals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

ZERO = Fraction(0)
ONE = Fraction(1)


class LpError(RuntimeError):
    pass


class Infeasible(LpError):
    pass


class Unbounded(LpError):
    pass


class Tableau:
    """min c.x  s.t.  A x = b (b >= 0), x >= 0.

    Columns are supplied one by one; the first `rows` columns must form an
    identity (slacks or artificials), providing the initial basis.
    """

    def __init__(self, b: Sequence[Fraction]):
        self.rows = len(b)
        self.b = [Fraction(v) for v in b]
        if any(v < 0 for v in self.b):
            raise LpError("right-hand side must be nonnegative")
        self.cols: List[List[Fraction]] = []   # tableau representation B^-1 A_j
        self.costs: List[Fraction] = []
        self.red: List[Fraction] = []          # reduced costs
        self.basis: List[int] = []
        self.obj = ZERO

    def add_column(self, col: Sequence[Fraction], cost: Fraction) -> int:
        """Add a column given in ORIGINAL coordinates; returns its index."""
        cost = Fraction(cost)
        if self.basis:
            rep = self._apply_basis_inverse(col)
        else:
            rep = [Fraction(v) for v in col]
        self.cols.append(rep)
        self.costs.append(cost)
        # reduced cost = c_j - c_B . rep
        r = cost
        for i, bi in enumerate(self.basis):
            r -= self.costs[bi] * rep[i]
        self.red.append(r)
        return len(self.cols) - 1

    def _apply_basis_inverse(self, col: Sequence[Fraction]) -> List[Fraction]:
        # The first `rows` columns started as the identity, so their current
        # tableau entries are B^-1.
        out = [ZERO] * self.rows
        for j, v in enumerate(col):
            if v:
                inv_col = self.cols[j]
                for i in range(self.rows):
                    if inv_col[i]:
                        out[i] += v * inv_col[i]
        return out

    def set_initial_basis(self) -> None:
        """Declare the first `rows` columns (an identity) as the basis."""
        if len(self.cols) < self.rows:
            raise LpError("identity block incomplete")
        self.basis = list(range(self.rows))
        self.obj = sum((self.costs[j] * self.b[i] for i, j in enumerate(self.basis)), ZERO)
        for j in range(len(self.cols)):
            r = self.costs[j]
            for i, bi in enumerate(self.basis):
                r -= self.costs[bi] * self.cols[j][i]
            self.red[j] = r

    def _pivot(self, row: int, col: int) -> None:
        piv = self.cols[col][row]
        if piv == 0:
            raise LpError("zero pivot")
        inv = ONE / piv
        for c in self.cols:
            c[row] *= inv
        self.b[row] *= inv
        pivot_row_cols = [j for j in range(len(self.cols)) if self.cols[j][row]]
        for i in range(self.rows):
            if i == row:
                continue
            factor = self.cols[col][i]
            if factor:
                for j in pivot_row_cols:
                    self.cols[j][i] -= factor * self.cols[j][row]
                self.b[i] -= factor * self.b[row]
        rfac = self.red[col]
        if rfac:
            for j in pivot_row_cols:
                self.red[j] -= rfac * self.cols[j][row]
            self.obj += rfac * self.b[row]
        self.basis[row] = col

    def optimize(self, forbidden: Optional[set] = None) -> None:
        """Primal simplex with Bland's rule; `forbidden` columns never enter."""
        forbidden = forbidden or set()
        while True:
            enter = -1
            for j in range(len(self.cols)):
                if j in forbidden:
                    continue
                if self.red[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return
            leave_row = -1
            best: Optional[Fraction] = None
            for i in range(self.rows):
                a = self.cols[enter][i]
                if a > 0:
                    ratio = self.b[i] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[i] < self.basis[leave_row]):
                        best = ratio
                        leave_row = i
            if leave_row < 0:
                raise Unbounded("unbounded LP")
            self._pivot(leave_row, enter)

    def solution(self, ncols: int) -> List[Fraction]:
        x = [ZERO] * ncols
        for i, j in enumerate(self.basis):
            if j < ncols:
                x[j] = self.b[i]
        return x

    def duals(self, identity_signs: Sequence[int]) -> List[Fraction]:
        """y_i from the reduced cost of the initial identity column of row i."""
        y = []
        for i in range(self.rows):
            # column i was +/- e_i with cost costs[i]; r_i = c_i - s*y_i
            y.append((self.costs[i] - self.red[i]) * identity_signs[i])
        return y


@dataclass
class LpSolution:
    value: Fraction
    x: List[Fraction]
    duals: List[Fraction]


def solve_lp(c: Sequence[Fraction],
             rows: Sequence[Tuple[Sequence[Fraction], str, Fraction]]) -> LpSolution:
    """min c.x  s.t.  each row (a, sense, rhs) with sense in <=, >=, =; x >= 0.

    Two-phase simplex; duals are reported per input row (sign convention:
    reduced cost of original column j is c_j - sum_i y_i a_ij).
    """
    nvars = len(c)
    m = len(rows)
    # Normalize to a_i . x (+ slack) = b_i with b_i >= 0.
    norm = []
    for a, sense, rhs in rows:
        a = [Fraction(v) for v in a]
        rhs = Fraction(rhs)
        sign = 1
        if rhs < 0:
            a = [-v for v in a]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
            sign = -1
        norm.append((a, sense, rhs, sign))

    tab = Tableau([r[2] for r in norm])
    # Identity block: slack where possible, artificial otherwise.
    artificial_rows = []
    for i, (a, sense, rhs, _) in enumerate(norm):
        col = [ZERO] * m
        col[i] = ONE
        if sense == "<=":
            tab.add_column(col, ZERO)          # slack, may be basic at rhs
        else:
            tab.add_column(col, ONE)           # artificial (phase 1 cost)
            artificial_rows.append(i)
    for j in range(nvars):
        col = [norm[i][0][j] for i in range(m)]
        tab.add_column(col, ZERO)
    surplus_index = {}
    for i, (a, sense, rhs, _) in enumerate(norm):
        if sense == ">=":
            col = [ZERO] * m
            col[i] = -ONE
            surplus_index[i] = tab.add_column(col, ZERO)
    tab.set_initial_basis()
    artificials = set(artificial_rows)
    tab.optimize()
    if tab.obj != 0:
        raise Infeasible("infeasible LP")
    # Phase 2: swap in the true objective.
    for j in range(len(tab.cols)):
        tab.costs[j] = ZERO
    for j in range(nvars):
        tab.costs[m + j] = Fraction(c[j])
    # Recompute reduced costs from scratch.
    for j in range(len(tab.cols)):
        r = tab.costs[j]
        for i, bi in enumerate(tab.basis):
            r -= tab.costs[bi] * tab.cols[j][i]
        tab.red[j] = r
    tab.obj = sum((tab.costs[bj] * tab.b[i] for i, bj in enumerate(tab.basis)), ZERO)
    tab.optimize(forbidden=artificials)
    xfull = [ZERO] * len(tab.cols)
    for i, j in enumerate(tab.basis):
        xfull[j] = tab.b[i]
    x = xfull[m:m + nvars]
    signs = [r[3] for r in norm]
    y = tab.duals(signs)
    return LpSolution(value=tab.obj, x=x, duals=y)
