"""Dense exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of
such rows.  Nothing here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

QVector = tuple  # tuple[Fraction, ...]
QMatrix = tuple  # tuple[QVector, ...]


def qvec(values: Iterable) -> QVector:
    """Coerce ints / Fractions / "a/b" strings into an exact vector."""
    return tuple(Fraction(v) for v in values)


def qmat(rows: Iterable[Iterable]) -> QMatrix:
    out = tuple(qvec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u: Sequence, v: Sequence) -> QVector:
    return tuple(a - b for a, b in zip(u, v))


def mat_vec(A: Sequence[Sequence], x: Sequence) -> QVector:
    return tuple(dot(row, x) for row in A)


def integer_row(row: Sequence[Fraction], rhs: Fraction = Fraction(0)) -> tuple[list[int], int]:
    """Scale ``row . x <= rhs`` by the positive lcm of its denominators."""
    m = lcm(*(Fraction(a).denominator for a in row), Fraction(rhs).denominator)
    return [int(a * m) for a in row], int(rhs * m)


def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot columns."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [a / piv for a in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def matrix_rank(A: Sequence[Sequence]) -> int:
    rows = [[Fraction(a) for a in r] for r in A]
    if not rows:
        return 0
    return len(_rref(rows, len(rows[0])))


@dataclass(frozen=True)
class Solution:
    """Affine solution set ``particular + span(nullspace_basis)``."""

    particular: QVector
    nullspace_basis: tuple[QVector, ...]


def solve_linear_system(A: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> Solution | None:
    """Solve ``A x = b`` exactly.  Returns ``None`` when inconsistent.

    ``ncols`` is only needed when ``A`` has no rows.
    """
    if len(A) != len(b):
        raise ValueError(f"{len(A)} rows but {len(b)} right-hand sides")
    n = len(A[0]) if A else ncols
    if n is None:
        raise ValueError("cannot infer column count of an empty matrix")
    aug = [[Fraction(a) for a in row] + [Fraction(rhs)] for row, rhs in zip(A, b)]
    pivots = _rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -aug[i][f]
        basis.append(tuple(v))
    return Solution(tuple(x), tuple(basis))


def independent_rows(A: Sequence[Sequence], b: Sequence) -> tuple[list[QVector], list[Fraction]] | None:
    """A row-reduced equivalent of ``A x = b`` with linearly independent rows.

    Returns ``None`` if the system is inconsistent.
    """
    if not A:
        return [], []
    n = len(A[0])
    aug = [[Fraction(a) for a in row] + [Fraction(rhs)] for row, rhs in zip(A, b)]
    pivots = _rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    return [tuple(aug[i][:n]) for i in range(len(pivots))], [aug[i][n] for i in range(len(pivots))]


def solve_square_int(M: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[list[int], int] | None:
    """Unique solution of a square integer system as ``(numerators, denominator)``.

    Fraction-free (Bareiss) elimination, so all intermediates stay integral.
    Returns ``None`` when the matrix is singular.  The denominator is positive.
    """
    n = len(M)
    a = [list(M[i]) + [rhs[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return None
            a[k], a[swap] = a[swap], a[k]
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n + 1):
                ai[j] = (akk * ai[j] - aik * rowk[j]) // prev
            ai[k] = 0
        prev = akk
    det = a[n - 1][n - 1]
    # back substitution with x_i = num_i / det, kept integral
    nums = [0] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n] * det - sum(a[i][j] * nums[j] for j in range(i + 1, n))
        nums[i] = s // a[i][i]
    if det < 0:
        nums = [-v for v in nums]
        det = -det
    return nums, det
