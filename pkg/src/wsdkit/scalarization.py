"""Weighted-sum and lexicographic scalarization, and support classification.

Every distinct outcome vector is put into exactly one of four classes.  The
extreme-supported test is a single LP per vector: maximize ``delta`` subject
to ``lam.(y' - y) >= delta`` against every competitor ``y'``, ``lam_i >= delta``
and ``sum(lam) = 1``.  A strictly positive optimum yields a strictly positive
weight for which ``y`` is the unique weighted-sum optimum.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import QVector, qvec, sub
from .lp import LPProblem, convex_combination, lp_solve
from .model import CheckReport, OutcomePoint, OutcomeSet, distinct_vectors, dominates, weighted_value

MAX_LEX_OBJECTIVES = 6


class SupportClass(str, enum.Enum):
    DOMINATED = "Dominated"
    UNSUPPORTED = "NondominatedUnsupported"
    SUPPORTED = "SupportedNonextreme"
    EXTREME = "ExtremeSupported"

    @property
    def is_supported(self) -> bool:
        return self in (SupportClass.SUPPORTED, SupportClass.EXTREME)


@dataclass(frozen=True)
class ClassifiedOutcome:
    vector: QVector
    ids: tuple[str, ...]
    support_class: SupportClass
    witness: QVector | None = None


def weighted_sum_argmin(outcomes: OutcomeSet, lam: Sequence) -> list[OutcomePoint]:
    """All points minimizing ``lam . y``, in input order.

    ``lam`` may be any nonnegative vector; the argmin does not depend on scale.
    """
    if len(lam) != outcomes.p:
        raise ValueError(f"weight has length {len(lam)}, expected {outcomes.p}")
    values = [weighted_value(lam, pt.y) for pt in outcomes.points]
    best = min(values)
    return [pt for pt, v in zip(outcomes.points, values) if v == best]


def _check_perm(sigma: Sequence[int], p: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(p)):
        raise ValueError(f"{sigma} is not a permutation of 0..{p - 1}")
    return sigma


def lex_argmin(outcomes: OutcomeSet, sigma: Sequence[int]) -> tuple[OutcomePoint, list[OutcomePoint]]:
    """Lexicographic minimum after permuting objectives by ``sigma`` (0-based).

    Returns the canonical representative (smallest id among the tied points)
    and all points sharing the optimal vector, in input order.
    """
    sigma = _check_perm(sigma, outcomes.p)
    key = lambda pt: tuple(pt.y[i] for i in sigma)  # noqa: E731
    best = min(key(pt) for pt in outcomes.points)
    ties = [pt for pt in outcomes.points if key(pt) == best]
    return min(ties, key=lambda pt: pt.id), ties


def _nondominated(vecs: list[QVector]) -> list[QVector]:
    return [v for v in vecs if not any(dominates(w, v) for w in vecs)]


def _competitors(outcomes: OutcomeSet, y: QVector) -> list[QVector]:
    # a dominated y' never binds: its inequality follows from that of a
    # non-dominated y'' <= y' because lam >= 0 on the relevant region
    vecs = [v for v, _ in distinct_vectors(outcomes)]
    if y not in vecs:
        raise ValueError(f"{y} does not occur in the outcome set")
    return [v for v in _nondominated(vecs) if v != y]


def _esn_lp(y: QVector, competitors: list[QVector], p: int):
    # variables (lam_1..lam_p, delta); maximize delta
    ineq, rhs = [], []
    for w in competitors:
        d = sub(w, y)
        ineq.append([-x for x in d] + [1])
        rhs.append(0)
    for i in range(p):
        ineq.append([-1 if j == i else 0 for j in range(p)] + [1])
        rhs.append(0)
    obj = [0] * p + [1]
    return lp_solve(LPProblem(obj, ineq, rhs, [[1] * p + [0]], [1]))


def is_extreme_supported(outcomes: OutcomeSet, y: Sequence, *, all_competitors: bool = False) -> QVector | None:
    """A strictly positive weight making ``y`` the unique optimum, or ``None``.

    By default only non-dominated competitors enter the LP, which leaves the
    yes/no answer unchanged; ``all_competitors=True`` states it against every
    distinct vector.
    """
    y = qvec(y)
    if all_competitors:
        competitors = [v for v, _ in distinct_vectors(outcomes) if v != y]
        if len(competitors) == len(distinct_vectors(outcomes)):
            raise ValueError(f"{y} does not occur in the outcome set")
    else:
        competitors = _competitors(outcomes, y)
    res = _esn_lp(y, competitors, outcomes.p)
    if res.solution[-1] <= 0:
        return None
    return res.solution[:-1]


def is_supported(outcomes: OutcomeSet, y: Sequence) -> QVector | None:
    """Some weight in the simplex for which ``y`` is weighted-sum optimal, or ``None``.

    This is exactly the nonemptiness test for the weight set component of
    ``y``; it does not check non-dominance.
    """
    y = qvec(y)
    p = outcomes.p
    ineq, rhs = [], []
    for w in _competitors(outcomes, y):
        ineq.append([-x for x in sub(w, y)])
        rhs.append(0)
    for i in range(p):
        ineq.append([-1 if j == i else 0 for j in range(p)])
        rhs.append(0)
    res = lp_solve(LPProblem([0] * p, ineq, rhs, [[1] * p], [1]))
    return res.solution if res.optimal else None


def classify(outcomes: OutcomeSet) -> list[ClassifiedOutcome]:
    """One entry per distinct vector, in order of first occurrence."""
    groups = distinct_vectors(outcomes)
    vecs = [v for v, _ in groups]
    nd = _nondominated(vecs)
    nd_set = set(nd)
    out = []
    for v, ids in groups:
        if v not in nd_set:
            out.append(ClassifiedOutcome(v, tuple(ids), SupportClass.DOMINATED))
            continue
        others = [w for w in nd if w != v]
        res = _esn_lp(v, others, outcomes.p)
        if res.solution[-1] > 0:
            out.append(ClassifiedOutcome(v, tuple(ids), SupportClass.EXTREME, res.solution[:-1]))
            continue
        lam = is_supported(outcomes, v)
        if lam is not None:
            out.append(ClassifiedOutcome(v, tuple(ids), SupportClass.SUPPORTED, lam))
        else:
            out.append(ClassifiedOutcome(v, tuple(ids), SupportClass.UNSUPPORTED))
    return out


def esn_vectors(classes: Sequence[ClassifiedOutcome]) -> list[QVector]:
    return [c.vector for c in classes if c.support_class is SupportClass.EXTREME]


def supported_vectors(classes: Sequence[ClassifiedOutcome]) -> list[QVector]:
    return [c.vector for c in classes if c.support_class.is_supported]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def esn_oracle_2d(outcomes: OutcomeSet) -> list[QVector]:
    """Extreme-supported vectors of a bi-objective set by a lower-left hull scan.

    Independent of the LP machinery: sort, keep the non-dominated staircase,
    then keep its strictly convex corners.
    """
    if outcomes.p != 2:
        raise ValueError("the hull oracle only handles two objectives")
    pts = sorted(set(outcomes.vectors()))
    stairs = []
    for q in pts:
        if not stairs or q[1] < stairs[-1][1]:
            stairs.append(q)
    hull: list[QVector] = []
    for q in stairs:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], q) <= 0:
            hull.pop()
        hull.append(q)
    return hull


def upper_image_expressible(outcomes: OutcomeSet, y: Sequence) -> bool:
    """Whether ``y`` is a convex combination of the other vectors plus a nonnegative one."""
    y = qvec(y)
    others = [v for v, _ in distinct_vectors(outcomes) if v != y]
    return convex_combination(others, y, upward=True) is not None


def check_lex_is_esn(outcomes: OutcomeSet, classes: Sequence[ClassifiedOutcome] | None = None) -> CheckReport:
    """Every lexicographic optimum, for every objective order, is extreme-supported."""
    p = outcomes.p
    if p > MAX_LEX_OBJECTIVES:
        raise ValueError(f"permutation check is capped at p <= {MAX_LEX_OBJECTIVES}, got {p}")
    if classes is None:
        classes = classify(outcomes)
    cls_of = {c.vector: c.support_class for c in classes}
    rows, failures = [], []
    for sigma in itertools.permutations(range(p)):
        rep, _ = lex_argmin(outcomes, sigma)
        row = {"perm": sigma, "vector": rep.y, "id": rep.id, "class": cls_of[rep.y]}
        rows.append(row)
        if cls_of[rep.y] is not SupportClass.EXTREME:
            failures.append(row)
    return CheckReport("lex_is_esn", not failures, failures, {"rows": rows})


def check_oracle_2d(outcomes: OutcomeSet, classes: Sequence[ClassifiedOutcome] | None = None) -> CheckReport:
    if classes is None:
        classes = classify(outcomes)
    lp_side = sorted(esn_vectors(classes))
    hull_side = sorted(esn_oracle_2d(outcomes))
    failures = [{"vector": v, "lp": v in lp_side, "hull": v in hull_side} for v in sorted(set(lp_side) ^ set(hull_side))]
    return CheckReport("esn_oracle_2d", not failures, failures)


def check_upper_image(outcomes: OutcomeSet, classes: Sequence[ClassifiedOutcome] | None = None) -> CheckReport:
    """Extreme-supported vectors are exactly the non-dominated extreme points of the upper image."""
    if classes is None:
        classes = classify(outcomes)
    failures = []
    for c in classes:
        if c.support_class is SupportClass.DOMINATED:
            continue
        extreme = not upper_image_expressible(outcomes, c.vector)
        if extreme != (c.support_class is SupportClass.EXTREME):
            failures.append({"vector": c.vector, "class": c.support_class, "upper_image_extreme": extreme})
    return CheckReport("upper_image_extreme_points", not failures, failures)


def positive_support_weight(outcomes: OutcomeSet, y: Sequence) -> QVector | None:
    """A strictly positive weight for which ``y`` is weighted-sum optimal, or ``None``."""
    y = qvec(y)
    p = outcomes.p
    # variables (lam, delta): maximize delta with lam_i >= delta, lam in the component of y
    ineq = [[-x for x in sub(w, y)] + [0] for w in _competitors(outcomes, y)]
    ineq += [[-1 if j == i else 0 for j in range(p)] + [1] for i in range(p)]
    res = lp_solve(LPProblem([0] * p + [1], ineq, [0] * len(ineq), [[1] * p + [0]], [1]))
    if not res.optimal or res.solution[-1] <= 0:
        return None
    return res.solution[:-1]


def check_in_conv_esn(outcomes: OutcomeSet, classes: Sequence[ClassifiedOutcome] | None = None) -> CheckReport:
    """Hull membership of supported and non-dominated vectors.

    Enforced: supported vectors are non-dominated; every vector optimal for a
    strictly positive weight lies in ``conv Y_ESN``; every non-dominated vector
    lies in ``conv Y_ESN + R^p_{>=0}``.

    Not enforced, only listed in ``details["outside_hull"]``: non-dominated
    vectors outside ``conv Y_ESN`` itself.  Unsupported ones ((3,3) next to
    (1,4), (4,1)) and, for p >= 3, ones supported only by weights with a zero
    entry ((1,1,1) next to (0,2,0), (2,0,0)) both occur.
    """
    if classes is None:
        classes = classify(outcomes)
    esn = esn_vectors(classes)
    nd = set(_nondominated([c.vector for c in classes]))
    failures, outside = [], []
    for c in classes:
        if c.support_class is SupportClass.DOMINATED:
            continue
        if c.vector not in nd:
            failures.append({"vector": c.vector, "class": c.support_class, "reason": "dominated"})
        if convex_combination(esn, c.vector) is not None:
            continue
        outside.append(c.vector)
        if convex_combination(esn, c.vector, upward=True) is None:
            failures.append({"vector": c.vector, "class": c.support_class, "reason": "outside upper image"})
        elif c.support_class.is_supported and positive_support_weight(outcomes, c.vector) is not None:
            failures.append({"vector": c.vector, "class": c.support_class, "reason": "positive weight but outside conv"})
    return CheckReport("supported_in_conv_esn", not failures, failures, {"outside_hull": outside})


def witness_holds(outcomes: OutcomeSet, c: ClassifiedOutcome) -> bool:
    """Substitute a classification witness back into its defining inequalities."""
    if c.witness is None:
        return c.support_class in (SupportClass.DOMINATED, SupportClass.UNSUPPORTED)
    lam = c.witness
    if any(x < 0 for x in lam) or sum(lam, Fraction(0)) != 1:
        return False
    mine = weighted_value(lam, c.vector)
    others = [weighted_value(lam, v) for v, _ in distinct_vectors(outcomes) if v != c.vector]
    if c.support_class is SupportClass.EXTREME:
        return all(x > 0 for x in lam) and all(mine < o for o in others)
    return all(mine <= o for o in others)
