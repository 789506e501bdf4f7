"""Exact two-phase primal simplex over the rationals.

Problems are stated as ``maximize c.x  s.t.  A x <= b,  E x = d`` with every
variable free.  Internally each variable is split into a difference of two
nonnegative ones, slacks are added to the inequalities, and artificials to
whatever rows lack an obvious starting basic variable.  Pivoting uses Bland's
rule throughout, so the solver terminates and is fully deterministic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .linalg import QMatrix, QVector, dot, qmat, qvec

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPProblem:
    objective: QVector
    ineq: QMatrix = ()
    ineq_rhs: QVector = ()
    eq: QMatrix = ()
    eq_rhs: QVector = ()

    def __post_init__(self):
        object.__setattr__(self, "objective", qvec(self.objective))
        for name in ("ineq", "eq"):
            object.__setattr__(self, name, qmat(getattr(self, name)))
        for name in ("ineq_rhs", "eq_rhs"):
            object.__setattr__(self, name, qvec(getattr(self, name)))
        n = len(self.objective)
        for rows, rhs, label in ((self.ineq, self.ineq_rhs, "ineq"), (self.eq, self.eq_rhs, "eq")):
            if len(rows) != len(rhs):
                raise ValueError(f"{label}: {len(rows)} rows but {len(rhs)} right-hand sides")
            if any(len(r) != n for r in rows):
                raise ValueError(f"{label}: column count differs from objective length {n}")

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        return all(dot(a, x) <= b for a, b in zip(self.ineq, self.ineq_rhs)) and all(
            dot(a, x) == b for a, b in zip(self.eq, self.eq_rhs)
        )


@dataclass(frozen=True)
class LPResult:
    status: Status
    solution: QVector | None = None
    value: Fraction | None = None
    pivots: int = field(default=0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _reduce(row: list[int], den: int) -> tuple[list[int], int]:
    g = gcd(den, *row)
    if g > 1:
        row = [x // g for x in row]
        den //= g
    return row, den


class _Tableau:
    """Dense simplex tableau over the integers.

    Row ``i`` stands for ``rows[i] / dens[i]`` with ``dens[i] > 0``; the last
    entry is the right-hand side.  Pivoting is fraction-free with a gcd
    reduction afterwards, so entries stay exact and small.
    """

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.rows = rows
        self.dens = [1] * len(rows)
        self.basis = basis
        self.obj: list[int] = []
        self.obj_den = 1
        self.pivots = 0

    @staticmethod
    def _eliminate(t: list[int], td: int, s: list[int], c: int) -> tuple[list[int], int]:
        # t/td - (t[c]/td) * (s/s[c]) with s[c] > 0
        a, sc = t[c], s[c]
        if a == 0:
            return t, td
        return _reduce([x * sc - a * y for x, y in zip(t, s)], td * sc)

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        scale = lcm(*(Fraction(x).denominator for x in cost))
        obj, den = [int(x * scale) for x in cost] + [0], scale
        for row, b in zip(self.rows, self.basis):
            obj, den = self._eliminate(obj, den, row, b)
        self.obj, self.obj_den = obj, den

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        if prow[c] < 0:
            prow = [-x for x in prow]
        prow, _ = _reduce(prow, prow[c])
        self.rows[r], self.dens[r] = prow, prow[c]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                self.rows[i], self.dens[i] = self._eliminate(row, self.dens[i], prow, c)
        self.obj, self.obj_den = self._eliminate(self.obj, self.obj_den, prow, c)
        self.basis[r] = c
        self.pivots += 1

    def run(self) -> bool:
        """Maximize the current objective.  Returns False if unbounded."""
        while True:
            obj = self.obj
            c = next((j for j in range(len(obj) - 1) if obj[j] > 0), None)
            if c is None:
                return True
            best = None  # (rhs, coeff, basic var, row) minimizing rhs/coeff
            for i, row in enumerate(self.rows):
                a = row[c]
                if a > 0:
                    rhs = row[-1]
                    if best is None:
                        best = (rhs, a, self.basis[i], i)
                        continue
                    lhs, rgt = rhs * best[1], best[0] * a
                    if lhs < rgt or (lhs == rgt and self.basis[i] < best[2]):
                        best = (rhs, a, self.basis[i], i)
            if best is None:
                return False
            self.pivot(best[3], c)

    def value_of(self, r: int) -> Fraction:
        return Fraction(self.rows[r][-1], self.dens[r])


def _int_row(values: Sequence[Fraction]) -> list[int]:
    scale = lcm(*(x.denominator for x in values))
    return [int(x * scale) for x in values]


def lp_solve(problem: LPProblem) -> LPResult:
    """Solve ``problem`` exactly; see the module docstring for the form."""
    n = problem.nvars
    m1 = len(problem.ineq)
    nstruct = 2 * n + m1  # u, v, slacks
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_rows: list[int] = []
    for i, (a, b) in enumerate(zip(problem.ineq, problem.ineq_rhs)):
        slack = [_ZERO] * m1
        slack[i] = _ONE
        row = list(a) + [-x for x in a] + slack
        if b < 0:
            row = [-x for x in row]
            art_rows.append(len(rows))
            basis.append(-1)
        else:
            basis.append(2 * n + i)
        rows.append(row + [abs(b)])
    for a, d in zip(problem.eq, problem.eq_rhs):
        row = list(a) + [-x for x in a] + [_ZERO] * m1
        if d < 0:
            row = [-x for x in row]
        art_rows.append(len(rows))
        basis.append(-1)
        rows.append(row + [abs(d)])

    nart = len(art_rows)
    int_rows = []
    for r, row in enumerate(rows):
        art = [_ZERO] * nart
        if r in art_rows:
            k = art_rows.index(r)
            art[k] = _ONE
            basis[r] = nstruct + k
        int_rows.append(_int_row(row[:-1] + art + row[-1:]))
    # a slack or artificial column is a unit column, so rows must be scaled so
    # the basic entry equals the row denominator: keep the scale in dens
    tab = _Tableau(int_rows, basis)
    tab.dens = [row[b] for row, b in zip(int_rows, basis)]

    if nart:
        tab.set_objective([_ZERO] * nstruct + [-_ONE] * nart)
        tab.run()
        if tab.obj[-1] != 0:
            return LPResult(Status.INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis, dropping redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= nstruct:
                c = next((j for j in range(nstruct) if tab.rows[r][j] != 0), None)
                if c is None:
                    del tab.rows[r], tab.dens[r], tab.basis[r]
                    continue
                tab.pivot(r, c)
            r += 1
        tab.rows = [row[:nstruct] + row[-1:] for row in tab.rows]

    c = problem.objective
    tab.set_objective(list(c) + [-x for x in c] + [_ZERO] * m1)
    if not tab.run():
        return LPResult(Status.UNBOUNDED, pivots=tab.pivots)
    values = [_ZERO] * nstruct
    for r, b in enumerate(tab.basis):
        values[b] = tab.value_of(r)
    x = tuple(values[j] - values[n + j] for j in range(n))
    return LPResult(Status.OPTIMAL, x, dot(c, x), pivots=tab.pivots)


def convex_combination(points: Sequence[Sequence], target: Sequence, upward: bool = False) -> QVector | None:
    """Coefficients ``mu >= 0, sum(mu) = 1`` with ``sum mu_k points[k] == target``.

    With ``upward=True`` the combination only has to be ``<= target``
    component-wise, i.e. ``target`` lies in ``conv(points) + R^p_{>=0}``.
    Returns ``None`` if no such combination exists.
    """
    k = len(points)
    if k == 0:
        return None
    p = len(target)
    cols = [[pt[i] for pt in points] for i in range(p)]
    ineq = [[-_ONE if j == t else _ZERO for j in range(k)] for t in range(k)]
    rhs = [_ZERO] * k
    eq = [[_ONE] * k]
    eq_rhs = [_ONE]
    if upward:
        ineq += cols
        rhs += list(target)
    else:
        eq += cols
        eq_rhs += list(target)
    res = lp_solve(LPProblem([_ZERO] * k, ineq, rhs, eq, eq_rhs))
    return res.solution if res.optimal else None
