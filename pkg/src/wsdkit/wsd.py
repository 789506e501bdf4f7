"""Weight set components as explicit polytopes.

A component is kept in H-representation ``{lam : A lam <= b, E lam = d}``.
For a plain component the rows of ``A`` are ``-e_i`` (nonnegativity) followed
by ``(y - y')`` for each extreme-supported competitor ``y'``; ``E`` is the
single normalization row.  Faces and intersections add further rows.

Vertices come from brute-force active-set enumeration: every choice of
``p - rank(E)`` inequalities is tightened, the square system is solved with
fraction-free integer elimination, and feasible unique solutions are kept.
That costs ``C(m, p - 1)`` small solves per component for ``m`` inequalities,
which is fine for ``p <= 5`` and a few dozen extreme points.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm
from typing import Sequence

from .linalg import QMatrix, QVector, dot, independent_rows, integer_row, matrix_rank, qvec, solve_square_int, sub
from .lp import LPProblem, convex_combination, lp_solve
from .model import CheckReport, OutcomeSet, distinct_vectors, dominates, pareto_filter
from .rng import SplitMix64
from .scalarization import ClassifiedOutcome, SupportClass, classify, esn_vectors, is_extreme_supported, supported_vectors, weighted_sum_argmin

WEIGHT_DRAW_MAX = 10**6


@dataclass(frozen=True)
class WeightSetComponent:
    owner: QVector
    owner_ids: tuple[str, ...]
    ineq: QMatrix
    ineq_rhs: QVector
    eq: QMatrix
    eq_rhs: QVector
    vertices: tuple[QVector, ...] | None = None
    dim: int | None = None

    @property
    def p(self) -> int:
        return len(self.owner)

    def lp(self, objective: Sequence) -> LPProblem:
        return LPProblem(objective, self.ineq, self.ineq_rhs, self.eq, self.eq_rhs)

    def with_rows(self, ineq=(), ineq_rhs=(), eq=(), eq_rhs=()) -> "WeightSetComponent":
        return replace(
            self,
            ineq=self.ineq + tuple(qvec(r) for r in ineq),
            ineq_rhs=self.ineq_rhs + qvec(ineq_rhs),
            eq=self.eq + tuple(qvec(r) for r in eq),
            eq_rhs=self.eq_rhs + qvec(eq_rhs),
            vertices=None,
            dim=None,
        )

    def solved(self) -> "WeightSetComponent":
        """Copy with vertices and dimension filled in."""
        return replace(self, vertices=tuple(vertices(self)), dim=dimension(self))


@dataclass(frozen=True)
class Decomposition:
    outcomes: OutcomeSet
    classes: tuple[ClassifiedOutcome, ...]
    cells: tuple[WeightSetComponent, ...]
    extreme_weights: tuple[QVector, ...]


def _simplex_rows(p: int):
    ineq = tuple(tuple(Fraction(-1 if j == i else 0) for j in range(p)) for i in range(p))
    return ineq, (Fraction(0),) * p, ((Fraction(1),) * p,), (Fraction(1),)


def simplex_component(p: int) -> WeightSetComponent:
    """The whole weight simplex, with no competing inequalities."""
    ineq, ineq_rhs, eq, eq_rhs = _simplex_rows(p)
    return WeightSetComponent((Fraction(0),) * p, (), ineq, ineq_rhs, eq, eq_rhs)


def component(outcomes: OutcomeSet, y: Sequence, esn: Sequence[QVector] | None = None) -> WeightSetComponent:
    """Weight set component of ``y`` stated against the extreme-supported vectors.

    Pass ``esn`` to use some other competitor list (e.g. every distinct vector).
    """
    y = qvec(y)
    groups = dict(distinct_vectors(outcomes))
    if y not in groups:
        raise ValueError(f"{y} does not occur in the outcome set")
    if esn is None:
        esn = esn_vectors(classify(outcomes))
    ineq, ineq_rhs, eq, eq_rhs = _simplex_rows(outcomes.p)
    rows = tuple(sub(y, w) for w in esn if w != y)
    return WeightSetComponent(y, tuple(groups[y]), ineq + rows, ineq_rhs + (Fraction(0),) * len(rows), eq, eq_rhs)


def contains(c: WeightSetComponent, lam: Sequence) -> bool:
    if len(lam) != c.p:
        raise ValueError(f"weight has length {len(lam)}, expected {c.p}")
    return all(dot(a, lam) <= b for a, b in zip(c.ineq, c.ineq_rhs)) and all(
        dot(a, lam) == b for a, b in zip(c.eq, c.eq_rhs)
    )


def vertices(c: WeightSetComponent) -> list[QVector]:
    """Exact vertex list, deduplicated and sorted; empty iff the component is."""
    p = c.p
    red = independent_rows(c.eq, c.eq_rhs)
    if red is None:
        return []
    eq_rows = [integer_row(a, b) for a, b in zip(*red)]
    k = p - len(eq_rows)
    ineq = [integer_row(a, b) for a, b in zip(c.ineq, c.ineq_rhs)]
    # identical constraint rows only produce singular systems
    distinct = list(dict.fromkeys((tuple(a), b) for a, b in ineq))
    found = set()
    for combo in itertools.combinations(distinct, k):
        rows = eq_rows + list(combo)
        sol = solve_square_int([r[0] for r in rows], [r[1] for r in rows])
        if sol is None:
            continue
        nums, den = sol
        if all(sum(x * n for x, n in zip(a, nums)) <= b * den for a, b in ineq):
            found.add(tuple(Fraction(n, den) for n in nums))
    return sorted(found)


def _feasible_point(c: WeightSetComponent) -> QVector | None:
    res = lp_solve(c.lp([0] * c.p))
    return res.solution if res.optimal else None


def equality_set(c: WeightSetComponent) -> list[int] | None:
    """Indices of inequalities tight on the whole component (``None`` if empty).

    Each candidate's slack is maximized by LP; any row slack at an LP optimum
    is struck from the candidate list at once.
    """
    x0 = _feasible_point(c)
    if x0 is None:
        return None
    rows = list(zip(c.ineq, c.ineq_rhs))
    open_rows = [i for i, (a, b) in enumerate(rows) if dot(a, x0) == b]
    tight = []
    while open_rows:
        i = open_rows.pop(0)
        a, b = rows[i]
        res = lp_solve(c.lp([-x for x in a]))
        if b + res.value == 0:
            tight.append(i)
            continue
        x = res.solution
        open_rows = [j for j in open_rows if dot(rows[j][0], x) == rows[j][1]]
    return tight


def dimension(c: WeightSetComponent) -> int:
    """Affine dimension, ``-1`` for an empty component."""
    tight = equality_set(c)
    if tight is None:
        return -1
    eq_mat = list(c.eq) + [c.ineq[i] for i in tight]
    return c.p - matrix_rank(eq_mat)


def affine_dimension(points: Sequence[QVector]) -> int:
    """Dimension of the affine hull of a point list; ``-1`` when empty."""
    if not points:
        return -1
    base = points[0]
    return matrix_rank([sub(q, base) for q in points[1:]]) if len(points) > 1 else 0


def intersect(*cells: WeightSetComponent) -> WeightSetComponent:
    out = cells[0]
    for c in cells[1:]:
        out = out.with_rows(c.ineq, c.ineq_rhs, c.eq, c.eq_rhs)
    return out


def common_face(c1: WeightSetComponent, c2: WeightSetComponent) -> tuple[WeightSetComponent, bool]:
    """Intersection of two components and whether it is a face of both.

    The intersection is ``c1`` cut by the hyperplane ``H`` where both owners
    score equally.  It is a common face when ``H`` supports both components
    (one LP each) and the two cuts coincide.  Support forces ``c1 & c2`` into
    ``H``, so coinciding cuts also equal the plain intersection.
    """
    h = sub(c1.owner, c2.owner)
    f1 = c1.with_rows(eq=[h], eq_rhs=[0]).solved()
    v2 = vertices(c2.with_rows(eq=[h], eq_rhs=[0]))

    def supports(c, direction):
        res = lp_solve(c.lp(direction))
        return not res.optimal or res.value <= 0

    ok = supports(c1, h) and supports(c2, [-x for x in h])
    ok = ok and all(contains(c2, v) for v in f1.vertices) and all(contains(c1, v) for v in v2)
    ok = ok and list(f1.vertices) == v2
    return f1, ok


def decompose(outcomes: OutcomeSet, classes: Sequence[ClassifiedOutcome] | None = None) -> Decomposition:
    """One full-dimensional cell per extreme-supported vector, plus the extreme weights."""
    if classes is None:
        classes = classify(outcomes)
    esn = esn_vectors(classes)
    cells = tuple(component(outcomes, y, esn).solved() for y in esn)
    weights = sorted({v for c in cells for v in c.vertices})
    return Decomposition(outcomes, tuple(classes), cells, tuple(weights))


def _integer_coords(outcomes: OutcomeSet) -> list[list[int]]:
    m = lcm(*(x.denominator for pt in outcomes.points for x in pt.y))
    return [[int(x * m) for x in pt.y] for pt in outcomes.points]


def random_weight(rng: SplitMix64, p: int) -> list[int]:
    """Integer draws in ``[0, 10^6]`` (all-zero rejected); normalize by the sum for the weight."""
    while True:
        w = [rng.randint(0, WEIGHT_DRAW_MAX) for _ in range(p)]
        if any(w):
            return w


def check_coverage(d: Decomposition, samples: int, seed: int) -> CheckReport:
    """Random weights each fall in some cell whose owner is optimal there."""
    if samples < 1:
        raise ValueError("need at least one sample")
    outcomes = d.outcomes
    p = outcomes.p
    coords = _integer_coords(outcomes)
    ids = [pt.id for pt in outcomes.points]
    # cells have only homogeneous inequalities plus normalization, so membership
    # of w / sum(w) is decided by the integer rows alone
    cell_rows = [[integer_row(a)[0] for a in c.ineq] for c in d.cells]
    owner_idx = [ids.index(c.owner_ids[0]) for c in d.cells]
    rng = SplitMix64(seed)
    failures = []
    hits = [0] * len(d.cells)
    for _ in range(samples):
        w = random_weight(rng, p)
        values = [sum(a * b for a, b in zip(w, y)) for y in coords]
        best = min(values)
        inside = [k for k, rows in enumerate(cell_rows) if all(sum(a * b for a, b in zip(r, w)) <= 0 for r in rows)]
        lam = [Fraction(x, sum(w)) for x in w]
        if not inside:
            failures.append({"weight": lam, "reason": "in no cell"})
        for k in inside:
            hits[k] += 1
            if values[owner_idx[k]] != best:
                failures.append({"weight": lam, "reason": "owner not optimal", "owner": d.cells[k].owner})
    return CheckReport("coverage", not failures, failures, {"samples": samples, "seed": seed, "cell_hits": hits})


def check_coverage_exact(d: Decomposition, lam: Sequence) -> bool:
    """Slow reference path for a single weight: membership and optimality via Fractions."""
    opt = {pt.y for pt in weighted_sum_argmin(d.outcomes, lam)}
    inside = [c for c in d.cells if contains(c, lam)]
    return bool(inside) and all(c.owner in opt for c in inside)


def check_necessity(outcomes: OutcomeSet, d: Decomposition | None = None) -> CheckReport:
    """Each extreme-supported vector owns a positive weight covered by no other component."""
    if d is None:
        d = decompose(outcomes)
    esn = esn_vectors(d.classes)
    others = {v: component(outcomes, v, esn) for v, _ in distinct_vectors(outcomes)}
    failures, witnesses = [], []
    for cell in d.cells:
        lam = is_extreme_supported(outcomes, cell.owner)
        ok = (
            lam is not None
            and all(x > 0 for x in lam)
            and contains(cell, lam)
            and not any(contains(c, lam) for v, c in others.items() if v != cell.owner)
        )
        witnesses.append({"owner": cell.owner, "weight": lam})
        if not ok:
            failures.append({"owner": cell.owner, "weight": lam})
    return CheckReport("necessity", not failures, failures, {"witnesses": witnesses})


def recover_supported(outcomes: OutcomeSet, d: Decomposition | None = None) -> CheckReport:
    """Solving weighted sums only at the extreme weights finds every supported vector."""
    if d is None:
        d = decompose(outcomes)
    nd = {pt.y for pt in pareto_filter(outcomes)}
    found = set()
    for lam in d.extreme_weights:
        found.update(pt.y for pt in weighted_sum_argmin(outcomes, lam) if pt.y in nd)
    expected = set(supported_vectors(d.classes))
    failures = [{"vector": v, "recovered": v in found, "supported": v in expected} for v in sorted(found ^ expected)]
    return CheckReport("recover_supported", not failures, failures, {"recovered": sorted(found)})


def check_dimension(outcomes: OutcomeSet, d: Decomposition | None = None) -> CheckReport:
    """Full dimension ``p - 1`` exactly for the extreme-supported components."""
    if d is None:
        d = decompose(outcomes)
    esn = esn_vectors(d.classes)
    p = outcomes.p
    failures, dims = [], []
    for c in d.classes:
        dim = dimension(component(outcomes, c.vector, esn))
        dims.append({"vector": c.vector, "class": c.support_class, "dim": dim})
        if (dim == p - 1) != (c.support_class is SupportClass.EXTREME):
            failures.append(dims[-1])
    return CheckReport("full_dimension_iff_esn", not failures, failures, {"dims": dims})


def check_common_faces(d: Decomposition) -> CheckReport:
    """Pairwise intersections of distinct cells are common faces of lower dimension."""
    p = d.outcomes.p
    failures, pairs = [], []
    for c1, c2 in itertools.combinations(d.cells, 2):
        face, ok = common_face(c1, c2)
        pairs.append({"owners": (c1.owner, c2.owner), "vertices": face.vertices, "dim": face.dim, "face": ok})
        if not ok or face.dim >= p - 1:
            failures.append(pairs[-1])
    return CheckReport("common_faces", not failures, failures, {"pairs": pairs})


def check_component_description(outcomes: OutcomeSet, d: Decomposition | None = None) -> CheckReport:
    """Stating a component against the extreme points gives the same polytope as against all of Y."""
    if d is None:
        d = decompose(outcomes)
    esn = esn_vectors(d.classes)
    every = [v for v, _ in distinct_vectors(outcomes)]
    failures = []
    for c in d.classes:
        short = vertices(component(outcomes, c.vector, esn))
        full = vertices(component(outcomes, c.vector, every))
        if short != full:
            failures.append({"vector": c.vector, "esn_vertices": short, "all_vertices": full})
    return CheckReport("component_description", not failures, failures)


def check_dominated_containment(outcomes: OutcomeSet, d: Decomposition | None = None) -> CheckReport:
    """A dominated vector's component sits inside each dominator's component."""
    if d is None:
        d = decompose(outcomes)
    esn = esn_vectors(d.classes)
    vecs = [v for v, _ in distinct_vectors(outcomes)]
    failures = []
    for y in vecs:
        doms = [w for w in vecs if dominates(w, y)]
        if not doms:
            continue
        verts = vertices(component(outcomes, y, esn))
        for w in doms:
            cw = component(outcomes, w, esn)
            if not all(contains(cw, v) for v in verts):
                failures.append({"dominated": y, "dominator": w})
    return CheckReport("dominated_containment", not failures, failures)


def check_supported_intersection(outcomes: OutcomeSet, d: Decomposition | None = None) -> CheckReport:
    """A supported non-extreme component equals the intersection over its hull support.

    Vectors with no convex combination of extreme-supported ones (possible
    for p >= 3 when only boundary weights support them) have no support to
    intersect over and are listed under ``details["no_hull_support"]``.
    """
    if d is None:
        d = decompose(outcomes)
    esn = esn_vectors(d.classes)
    cell_of = {c.owner: c for c in d.cells}
    failures, rows, skipped = [], [], []
    for c in d.classes:
        if c.support_class is not SupportClass.SUPPORTED:
            continue
        mu = convex_combination(esn, c.vector)
        if mu is None:
            skipped.append(c.vector)
            continue
        support = [esn[i] for i, m in enumerate(mu) if m > 0]
        own = vertices(component(outcomes, c.vector, esn))
        meet = vertices(intersect(*(cell_of[v] for v in support)))
        rows.append({"vector": c.vector, "support": support, "vertices": own})
        if own != meet:
            failures.append({"vector": c.vector, "support": support, "own": own, "intersection": meet})
    return CheckReport("supported_intersection", not failures, failures, {"rows": rows, "no_hull_support": skipped})
