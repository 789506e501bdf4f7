"""Command-line driver: one JSON report per run on stdout.

Exit codes: 0 success, 1 a checked property was falsified, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import approx, scalarization as sc, wsd
from .instances import InstanceError, format_rational, generate, instance_to_doc, parse_instance, serialize_instance
from .model import CheckReport, OutcomeSet
from .report import jsonable, render

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> OutcomeSet:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def _check(report: CheckReport) -> dict:
    return {"name": report.name, "passed": report.passed, "failures": report.failures}


def classification_rows(classes) -> list[dict]:
    return [
        {"vector": c.vector, "ids": c.ids, "class": c.support_class, "witness": c.witness}
        for c in classes
    ]


def cell_rows(d: wsd.Decomposition, with_vertices: bool) -> list[dict]:
    rows = []
    for c in d.cells:
        row = {
            "owner": c.owner,
            "owner_ids": c.owner_ids,
            "dim": c.dim,
            "halfspaces": [{"a": a, "b": b} for a, b in zip(c.ineq, c.ineq_rhs)],
        }
        if with_vertices:
            row["vertices"] = c.vertices
        rows.append(row)
    return rows


def certificate_payload(outcomes: OutcomeSet, ids: list[str]) -> dict:
    cert = approx.verify_A_approximation(ids, outcomes)
    if isinstance(cert, approx.Counterexample):
        return {"candidates": ids, "certified": False, "counterexample": cert.target_id}
    return {
        "candidates": ids,
        "certified": True,
        "bound_p": cert.bound_p,
        "entries": [
            {"target": tid, "witness": e.witness_id, "alpha": e.alpha, "excess": approx.excess(e.alpha),
             "weight_used": e.weight_used, "ws_optimal": e.ws_optimal}
            for tid, e in cert.entries.items()
        ],
    }


def cmd_classify(args) -> tuple[OutcomeSet, dict, bool]:
    outcomes = _read(args.instance)
    return outcomes, {"classes": classification_rows(sc.classify(outcomes))}, True


def cmd_wsd(args):
    outcomes = _read(args.instance)
    d = wsd.decompose(outcomes)
    result = {"cells": cell_rows(d, args.vertices), "extreme_weights": d.extreme_weights}
    checks = []
    if args.check_coverage is not None:
        if args.check_coverage < 1:
            raise UsageError("--check-coverage needs a positive sample count")
        checks.append(wsd.check_coverage(d, args.check_coverage, args.seed))
    if args.check_necessity:
        checks.append(wsd.check_necessity(outcomes, d))
    if args.recover_supported:
        checks.append(wsd.recover_supported(outcomes, d))
    if checks:
        result["checks"] = [_check(c) for c in checks]
    return outcomes, result, all(c.passed for c in checks)


def cmd_approx(args):
    if args.sense != "min":
        raise UsageError("approximation guarantees only hold for minimization problems")
    outcomes = _read(args.instance)
    mode = args.candidates
    if mode in ("supported", "esn", "all"):
        ids = approx.candidate_ids(outcomes, mode)
    else:
        ids = [s for s in mode.split(",") if s]
        known = {pt.id for pt in outcomes.points}
        unknown = [s for s in ids if s not in known]
        if unknown or not ids:
            raise UsageError(f"unknown candidate ids: {', '.join(unknown) or '(none given)'}")
    payload = certificate_payload(outcomes, ids)
    return outcomes, payload, payload["certified"]


def _parse_perm(text: str, p: int) -> tuple[int, ...]:
    try:
        perm = tuple(int(s) - 1 for s in text.split(","))
    except ValueError:
        raise UsageError(f"--perm: not a comma-separated list of integers: {text}") from None
    if sorted(perm) != list(range(p)):
        raise UsageError(f"--perm: {text} is not a permutation of 1..{p}")
    return perm


def _lex_row(row: dict) -> dict:
    return {"perm": [i + 1 for i in row["perm"]], "vector": row["vector"], "id": row["id"], "class": row["class"]}


def cmd_lex(args):
    outcomes = _read(args.instance)
    classes = sc.classify(outcomes)
    if args.all_perms:
        if outcomes.p > sc.MAX_LEX_OBJECTIVES:
            raise UsageError(f"--all-perms is capped at p <= {sc.MAX_LEX_OBJECTIVES}")
        rep = sc.check_lex_is_esn(outcomes, classes)
        return outcomes, {"rows": [_lex_row(r) for r in rep.details["rows"]], "passed": rep.passed}, rep.passed
    perm = _parse_perm(args.perm, outcomes.p)
    best, ties = sc.lex_argmin(outcomes, perm)
    cls = {c.vector: c.support_class for c in classes}[best.y]
    result = _lex_row({"perm": perm, "vector": best.y, "id": best.id, "class": cls})
    result["ties"] = [pt.id for pt in ties]
    return outcomes, result, cls is sc.SupportClass.EXTREME


def cmd_gen(args):
    try:
        outcomes = generate(args.seed, args.n, args.p, args.max, args.positive)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        Path(args.output).write_text(serialize_instance(outcomes) + "\n", encoding="utf-8")
    return outcomes, {"instance": instance_to_doc(outcomes)}, True


def check_all(outcomes: OutcomeSet, samples: int = 1000, seed: int = 0) -> tuple[dict, bool]:
    """Full property suite on one instance."""
    classes = sc.classify(outcomes)
    d = wsd.decompose(outcomes, classes)
    p = outcomes.p
    checks = [
        CheckReport("witnesses", all(sc.witness_holds(outcomes, c) for c in classes)),
        sc.check_upper_image(outcomes, classes),
        sc.check_in_conv_esn(outcomes, classes),
    ]
    if p == 2:
        checks.append(sc.check_oracle_2d(outcomes, classes))
    lex_rows = None
    if p <= sc.MAX_LEX_OBJECTIVES:
        lex = sc.check_lex_is_esn(outcomes, classes)
        lex_rows = [_lex_row(r) for r in lex.details["rows"]]
        checks.append(lex)
    checks += [
        wsd.check_dimension(outcomes, d),
        wsd.check_component_description(outcomes, d),
        wsd.check_dominated_containment(outcomes, d),
        wsd.check_supported_intersection(outcomes, d),
        wsd.check_coverage(d, samples, seed),
        wsd.check_necessity(outcomes, d),
        wsd.check_common_faces(d),
        wsd.recover_supported(outcomes, d),
    ]
    result = {
        "classes": classification_rows(classes),
        "cells": cell_rows(d, True),
        "extreme_weights": d.extreme_weights,
        "lex": lex_rows,
    }
    if all(x > 0 for pt in outcomes.points for x in pt.y):
        certs = {mode: certificate_payload(outcomes, approx.candidate_ids(outcomes, mode, classes)) for mode in ("supported", "esn")}
        checks.append(CheckReport("approximation", all(c["certified"] for c in certs.values())))
        result["certificates"] = certs
    else:
        result["certificates"] = None
    result["checks"] = [_check(c) for c in checks]
    return result, all(c.passed for c in checks)


def cmd_check_all(args):
    outcomes = _read(args.instance)
    result, ok = check_all(outcomes, args.samples, args.seed)
    return outcomes, result, ok


def _pretty(command: str, result: dict) -> str:
    def fmt(v):
        return "(" + ", ".join(format_rational(x) for x in v) + ")"

    lines = []
    if "classes" in result:
        for c in result["classes"]:
            lines.append(f"{fmt(c['vector']):<24} {','.join(c['ids']):<16} {c['class'].value}")
    if "cells" in result:
        for c in result["cells"]:
            vs = " ".join(fmt(v) for v in c.get("vertices") or ())
            lines.append(f"cell {fmt(c['owner'])} dim={c['dim']} {vs}".rstrip())
    if "entries" in result:
        for e in result["entries"]:
            lines.append(f"{e['target']:<12} <- {e['witness']:<12} alpha={fmt(e['alpha'])}")
    if "counterexample" in result:
        lines.append(f"no candidate approximates {result['counterexample']}")
    for c in result.get("checks") or ():
        lines.append(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}")
    if not lines:
        import json

        return json.dumps(jsonable(result), indent=2) + "\n"
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsdkit", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="support class of every distinct outcome vector")
    p.add_argument("instance")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("wsd", parents=[common], help="weight set decomposition")
    p.add_argument("instance")
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--check-coverage", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check-necessity", action="store_true")
    p.add_argument("--recover-supported", action="store_true")
    p.set_defaults(func=cmd_wsd)

    p = sub.add_parser("approx", parents=[common], help="approximation certificate for a candidate set")
    p.add_argument("instance")
    p.add_argument("--candidates", default="supported", help="supported | esn | all | comma-separated ids")
    p.add_argument("--sense", choices=("min", "max"), default="min")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("lex", parents=[common], help="lexicographic optima")
    p.add_argument("instance")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--perm", help="1-based objective order, e.g. 2,1,3")
    g.add_argument("--all-perms", action="store_true")
    p.set_defaults(func=cmd_lex)

    p = sub.add_parser("gen", parents=[common], help="seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--positive", action="store_true")
    p.add_argument("--output", help="also write the bare instance document here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-all", parents=[common], help="run every property check on one instance")
    p.add_argument("instance")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        outcomes, result, ok = args.func(args)
    except (UsageError, InstanceError, approx.DomainError) as exc:
        print(f"wsdkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.pretty:
        sys.stdout.write(_pretty(args.command, result))
    else:
        sys.stdout.write(render(args.command, outcomes, result))
    return EXIT_OK if ok else EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
