"""JSON reports: exact rationals as strings, stable key order, no timestamps."""
from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
from fractions import Fraction

from . import __version__
from .instances import format_rational, serialize_instance
from .model import OutcomeSet


def jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, jsonable(k))): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(x) for x in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def instance_digest(outcomes: OutcomeSet) -> str:
    return hashlib.sha256(serialize_instance(outcomes).encode("utf-8")).hexdigest()


def render(command: str, outcomes: OutcomeSet, result) -> str:
    doc = {
        "command": command,
        "version": __version__,
        "instance_sha256": instance_digest(outcomes),
        "result": jsonable(result),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
