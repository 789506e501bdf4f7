"""Approximation factors and certificates for minimization instances.

For a target ``t`` the reciprocal weight ``lam_i ~ 1 / t_i`` is used; any
weighted-sum optimum ``w`` under it satisfies ``sum_i w_i / t_i <= p``, so the
factor vector ``alpha_i = max(1, w_i / t_i)`` has a unit entry and its entries
above one add up to at most ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import QVector, qvec
from .model import CheckReport, OutcomePoint, OutcomeSet, weighted_value
from .scalarization import ClassifiedOutcome, SupportClass, classify, weighted_sum_argmin


class DomainError(ValueError):
    """Data outside the strictly positive minimization setting."""


def _require_min(sense: str) -> None:
    if sense != "min":
        raise DomainError(f"approximation guarantees only hold for minimization, not {sense!r}")


def _require_positive(y: Sequence, what: str = "vector") -> None:
    if any(x <= 0 for x in y):
        raise DomainError(f"{what} must be strictly positive, got {tuple(str(x) for x in y)}")


def reciprocal_weight(y: Sequence) -> QVector:
    y = qvec(y)
    _require_positive(y)
    inv = [1 / x for x in y]
    total = sum(inv, Fraction(0))
    return tuple(x / total for x in inv)


def factor(witness: Sequence, target: Sequence) -> QVector:
    witness, target = qvec(witness), qvec(target)
    if len(witness) != len(target):
        raise ValueError("witness and target differ in length")
    _require_positive(witness, "witness")
    _require_positive(target, "target")
    return tuple(max(Fraction(1), w / t) for w, t in zip(witness, target))


def excess(alpha: Sequence) -> Fraction:
    """Sum of the factor entries strictly above one."""
    return sum((a for a in alpha if a > 1), Fraction(0))


def qualifies(alpha: Sequence, p: int) -> bool:
    return any(a == 1 for a in alpha) and excess(alpha) <= p


def _check_outcomes(outcomes: OutcomeSet) -> None:
    for pt in outcomes.points:
        _require_positive(pt.y, f"point {pt.id}")


def approximate_point(outcomes: OutcomeSet, target: Sequence, sense: str = "min") -> tuple[OutcomePoint, QVector, QVector]:
    """Witness, factor vector and weight from the reciprocal-weight construction.

    Among the weighted-sum optima the witness with the smallest maximal factor
    wins, ties going to the smaller id.
    """
    _require_min(sense)
    _check_outcomes(outcomes)
    target = qvec(target)
    if not outcomes.contains_vector(target):
        raise ValueError(f"{target} does not occur in the outcome set")
    lam = reciprocal_weight(target)
    best = min(weighted_sum_argmin(outcomes, lam), key=lambda pt: (max(factor(pt.y, target)), pt.id))
    return best, factor(best.y, target), lam


@dataclass(frozen=True)
class CertificateEntry:
    witness_id: str
    alpha: QVector
    weight_used: QVector
    ws_optimal: bool  # witness minimizes the reciprocal-weighted sum over the whole set


@dataclass(frozen=True)
class ApproximationCertificate:
    entries: dict
    bound_p: int


@dataclass(frozen=True)
class Counterexample:
    target_id: str


def verify_A_approximation(
    candidates: Iterable[str], outcomes: OutcomeSet, sense: str = "min"
) -> ApproximationCertificate | Counterexample:
    """Certify that every point is approximated by some candidate.

    A candidate qualifies for a target when its factor vector has a unit
    entry and the entries above one sum to at most ``p``; such a vector is
    dominated by a member of the factor set with equality, so it certifies.
    The qualifying candidate with the smallest maximal factor is recorded,
    ties by id.
    """
    _require_min(sense)
    _check_outcomes(outcomes)
    cands = [outcomes.by_id(c) for c in dict.fromkeys(candidates)]
    if not cands:
        raise ValueError("candidate set is empty")
    p = outcomes.p
    entries = {}
    for t in outcomes.points:
        lam = reciprocal_weight(t.y)
        opt = min(weighted_value(lam, pt.y) for pt in outcomes.points)
        scored = [(max(a), c.id, c, a) for c in cands for a in [factor(c.y, t.y)] if qualifies(a, p)]
        if not scored:
            return Counterexample(t.id)
        _, _, c, alpha = min(scored, key=lambda s: (s[0], s[1]))
        entries[t.id] = CertificateEntry(c.id, alpha, lam, weighted_value(lam, c.y) == opt)
    return ApproximationCertificate(entries, p)


def candidate_ids(outcomes: OutcomeSet, mode: str, classes: Sequence[ClassifiedOutcome] | None = None) -> list[str]:
    """Ids for ``supported`` / ``esn`` / ``all`` candidate sets, in input order."""
    if mode == "all":
        return [pt.id for pt in outcomes.points]
    if classes is None:
        classes = classify(outcomes)
    if mode == "supported":
        keep = {c.vector for c in classes if c.support_class.is_supported}
    elif mode == "esn":
        keep = {c.vector for c in classes if c.support_class is SupportClass.EXTREME}
    else:
        raise ValueError(f"unknown candidate mode: {mode}")
    return [pt.id for pt in outcomes.points if pt.y in keep]


def first_objective_check(outcomes: OutcomeSet, lam: Sequence) -> CheckReport:
    """Every weighted-sum optimum is no worse than any other point in some objective."""
    lam = qvec(lam)
    if any(x < 0 for x in lam) or not any(lam):
        raise ValueError("weight must be nonnegative and not all zero")
    failures = []
    for x in weighted_sum_argmin(outcomes, lam):
        for other in outcomes.points:
            if not any(a <= b for a, b in zip(x.y, other.y)):
                failures.append({"optimum": x.id, "other": other.id})
    return CheckReport("first_objective", not failures, failures, {"weight": lam})


def tightness_probe(instances: Iterable[OutcomeSet]) -> tuple[Fraction, str | None]:
    """Largest factor excess needed with extreme-supported candidates, as evidence only.

    Returns the excess and ``"<instance index>:<target id>"`` where it occurred.
    """
    worst, where = Fraction(0), None
    for k, outcomes in enumerate(instances):
        cert = verify_A_approximation(candidate_ids(outcomes, "esn"), outcomes)
        if isinstance(cert, Counterexample):
            raise AssertionError(f"instance {k}: no certificate for {cert.target_id}")
        for tid, e in cert.entries.items():
            if excess(e.alpha) > worst:
                worst, where = excess(e.alpha), f"{k}:{tid}"
    return worst, where
