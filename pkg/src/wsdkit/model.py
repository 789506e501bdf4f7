"""Finite multi-objective instances, Pareto dominance and filtering."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import QVector, qvec


@dataclass(frozen=True)
class OutcomePoint:
    id: str
    y: QVector

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("outcome id must be a nonempty string")
        object.__setattr__(self, "y", qvec(self.y))


@dataclass(frozen=True)
class OutcomeSet:
    """A finite outcome set; ids stand in for the preimages."""

    p: int
    points: tuple[OutcomePoint, ...]

    def __post_init__(self):
        pts = tuple(pt if isinstance(pt, OutcomePoint) else OutcomePoint(*pt) for pt in self.points)
        object.__setattr__(self, "points", pts)
        if self.p < 2:
            raise ValueError(f"need at least two objectives, got p={self.p}")
        if not pts:
            raise ValueError("outcome set must be nonempty")
        seen = set()
        for pt in pts:
            if pt.id in seen:
                raise ValueError(f"duplicate id: {pt.id}")
            seen.add(pt.id)
            if len(pt.y) != self.p:
                raise ValueError(f"point {pt.id} has {len(pt.y)} objectives, expected {self.p}")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence], ids: Iterable[str] | None = None) -> "OutcomeSet":
        vectors = [qvec(v) for v in vectors]
        if ids is None:
            ids = [f"x{i}" for i in range(len(vectors))]
        pts = tuple(OutcomePoint(i, v) for i, v in zip(ids, vectors))
        return cls(len(vectors[0]) if vectors else 0, pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def by_id(self, pid: str) -> OutcomePoint:
        for pt in self.points:
            if pt.id == pid:
                return pt
        raise KeyError(pid)

    def vectors(self) -> list[QVector]:
        return [pt.y for pt in self.points]

    def contains_vector(self, y: Sequence) -> bool:
        y = qvec(y)
        return any(pt.y == y for pt in self.points)


class Relation(str, enum.Enum):
    """How ``y`` relates to ``y2`` under component-wise comparison."""

    EQUAL = "Equal"
    STRICTLY_DOMINATES = "StrictlyDominates"  # y < y2 in every component
    DOMINATES = "Dominates"  # y <= y2, y != y2, but not strictly everywhere
    DOMINATED_STRICTLY_BY = "DominatedStrictlyBy"
    DOMINATED_BY = "DominatedBy"
    INCOMPARABLE = "Incomparable"

    def mirror(self) -> "Relation":
        return _MIRROR[self]


_MIRROR = {
    Relation.EQUAL: Relation.EQUAL,
    Relation.STRICTLY_DOMINATES: Relation.DOMINATED_STRICTLY_BY,
    Relation.DOMINATED_STRICTLY_BY: Relation.STRICTLY_DOMINATES,
    Relation.DOMINATES: Relation.DOMINATED_BY,
    Relation.DOMINATED_BY: Relation.DOMINATES,
    Relation.INCOMPARABLE: Relation.INCOMPARABLE,
}


def compare(y: Sequence, y2: Sequence) -> Relation:
    if len(y) != len(y2):
        raise ValueError(f"cannot compare vectors of length {len(y)} and {len(y2)}")
    le = ge = lt = gt = True
    for a, b in zip(y, y2):
        if a < b:
            ge = gt = False
        elif a > b:
            le = lt = False
        else:
            lt = gt = False
    if le and ge:
        return Relation.EQUAL
    if lt:
        return Relation.STRICTLY_DOMINATES
    if le:
        return Relation.DOMINATES
    if gt:
        return Relation.DOMINATED_STRICTLY_BY
    if ge:
        return Relation.DOMINATED_BY
    return Relation.INCOMPARABLE


def dominates(y: Sequence, y2: Sequence) -> bool:
    """``y`` ⪇ ``y2``: no worse anywhere and not equal."""
    return all(a <= b for a, b in zip(y, y2)) and any(a < b for a, b in zip(y, y2))


def pareto_filter(outcomes: OutcomeSet) -> list[OutcomePoint]:
    """Points not dominated by any other point, in input order.

    Equal vectors never dominate each other, so duplicates survive together.
    """
    vecs = [v for v, _ in distinct_vectors(outcomes)]
    keep = {v for v in vecs if not any(dominates(w, v) for w in vecs)}
    return [pt for pt in outcomes.points if pt.y in keep]


def distinct_vectors(outcomes: OutcomeSet) -> list[tuple[QVector, list[str]]]:
    groups: dict[QVector, list[str]] = {}
    for pt in outcomes.points:
        groups.setdefault(pt.y, []).append(pt.id)
    return list(groups.items())


def check_weight(lam: Sequence, p: int | None = None) -> QVector:
    """Validate a point of the weight simplex and return it as an exact vector."""
    lam = qvec(lam)
    if p is not None and len(lam) != p:
        raise ValueError(f"weight has length {len(lam)}, expected {p}")
    if any(x < 0 for x in lam):
        raise ValueError(f"weight has a negative entry: {lam}")
    if sum(lam, Fraction(0)) != 1:
        raise ValueError("weight entries must sum to exactly 1")
    return lam


def uniform_weight(p: int) -> QVector:
    return (Fraction(1, p),) * p


def weighted_value(lam: Sequence, y: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(lam, y)), Fraction(0))


@dataclass
class CheckReport:
    """Outcome of a property check run against one instance."""

    name: str
    passed: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
