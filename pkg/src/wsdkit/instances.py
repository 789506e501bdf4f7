"""Instance documents: exact JSON (de)serialization and seeded generation."""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .model import OutcomePoint, OutcomeSet
from .rng import SplitMix64

_RATIONAL = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


class InstanceError(ValueError):
    """Base class for rejected instance documents."""


class MalformedJSON(InstanceError):
    pass


class SchemaError(InstanceError):
    pass


class DuplicateId(InstanceError):
    pass


class RaggedVector(InstanceError):
    pass


class BadRational(InstanceError):
    pass


class ZeroDenominator(BadRational):
    pass


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text, where: str = "value") -> Fraction:
    if not isinstance(text, str):
        raise BadRational(f"{where}: expected a rational string, got {type(text).__name__}")
    m = _RATIONAL.match(text.strip())
    if not m:
        raise BadRational(f"{where}: not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise ZeroDenominator(f"{where}: zero denominator in {text!r}")
    return Fraction(int(num), int(den))


def parse_instance(text: str | bytes) -> OutcomeSet:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedJSON(f"malformed JSON: {exc}") from None
    return instance_from_doc(doc)


def instance_from_doc(doc) -> OutcomeSet:
    if not isinstance(doc, dict):
        raise SchemaError("instance must be a JSON object")
    p = doc.get("p")
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise SchemaError("p: expected an integer >= 2")
    raw = doc.get("points")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("points: expected a nonempty list")
    seen = set()
    points = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict):
            raise SchemaError(f"points[{k}]: expected an object")
        pid = item.get("id")
        if not isinstance(pid, str) or not pid:
            raise SchemaError(f"points[{k}].id: expected a nonempty string")
        if pid in seen:
            raise DuplicateId(f"duplicate id: {pid}")
        seen.add(pid)
        y = item.get("y")
        if not isinstance(y, list):
            raise SchemaError(f"points[{k}].y: expected a list")
        if len(y) != p:
            raise RaggedVector(f"points[{k}].y: length {len(y)}, expected p={p}")
        points.append(OutcomePoint(pid, tuple(parse_rational(v, f"points[{k}].y[{j}]") for j, v in enumerate(y))))
    return OutcomeSet(p, tuple(points))


def instance_to_doc(outcomes: OutcomeSet) -> dict:
    return {
        "p": outcomes.p,
        "points": [{"id": pt.id, "y": [format_rational(x) for x in pt.y]} for pt in outcomes.points],
    }


def serialize_instance(outcomes: OutcomeSet) -> str:
    """Canonical text form; also the input to the report digest."""
    return json.dumps(instance_to_doc(outcomes), separators=(",", ":"), ensure_ascii=False)


def generate(seed: int, n: int, p: int, max_coord: int, positive: bool = True) -> OutcomeSet:
    """Random integer instance; coordinates drawn point by point, objective by objective."""
    if n < 1 or p < 2 or max_coord < 1:
        raise ValueError(f"invalid bounds: n={n}, p={p}, max={max_coord}")
    rng = SplitMix64(seed)
    lo = 1 if positive else -max_coord
    pts = tuple(
        OutcomePoint(f"x{i}", tuple(Fraction(rng.randint(lo, max_coord)) for _ in range(p))) for i in range(n)
    )
    return OutcomeSet(p, pts)
