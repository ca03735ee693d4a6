"""Command-line interface.

Exit codes: 0 success or affirmative answer, 1 well-formed negative answer,
2 parse or validation error (including unreadable input), 3 resource cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from distgraph.dgf import Document, graph_to_json, iso_to_json, parse
from distgraph.enumeration import (
    DEFAULT_MAX_CANDIDATES,
    DEFAULT_TIME_LIMIT,
    EnumerationParams,
    enumerate_census,
)
from distgraph.equivalence import (
    EquivalenceWitness,
    GraphIsomorphism,
    are_conjugate,
    are_equivalent,
    canonical_code,
)
from distgraph.errors import (
    ContractViolation,
    NotASurfaceError,
    ParseError,
    ResourceError,
    ValidationError,
)
from distgraph.model import DistinguishedGraph, graph_connected
from distgraph.realizability import Verdict, is_orientable, is_realizable, orientability_and_genus

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

_CONDITION_NAMES = {
    "a": "condition (a)",
    "link": "link connected",
    "b": "condition (b)",
    "c": "condition (c)",
}


class _Failure(Exception):
    """Input problem reported with exit code 2."""

    def __init__(self, payload: dict[str, Any], text: str):
        self.payload = payload
        self.text = text


def _load(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure({"type": "io", "file": path, "message": str(exc)}, f"{path}: {exc}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise _Failure(
            {"type": "parse", "file": path, "line": exc.line, "column": exc.column, "message": exc.message},
            f"{path}:{exc.line}:{exc.column}: {exc.message}",
        ) from None
    except ValidationError as exc:
        problems = [{"kind": p.kind, "message": p.message} for p in exc.problems]
        text = "\n".join(f"{path}: [{p.kind}] {p.message}" for p in exc.problems)
        raise _Failure({"type": "validation", "file": path, "problems": problems}, text) from None


def _emit(args, payload: dict[str, Any], lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _yn(flag: bool | None) -> str:
    if flag is None:
        return "not evaluated"
    return "yes" if flag else "no"


def _verdict_json(v: Verdict) -> dict[str, Any]:
    return {"status": str(v.status), "offenders": [str(x) for x in v.offenders]}


def _verdict_text(v: Verdict) -> str:
    text = str(v.status)
    if v.offenders:
        text += ": " + ", ".join(str(x) for x in v.offenders)
    return text


def _signed(edge: str, sign: int) -> str:
    return edge if sign > 0 else f"{edge}^-1"


def _ordered(w: EquivalenceWitness, g: DistinguishedGraph) -> GraphIsomorphism:
    # print maps in the declaration order of the source graph
    vm, em = w.iso.vertex_map, w.iso.edge_map
    return GraphIsomorphism({v: vm[v] for v in g.vertices}, {e.id: em[e.id] for e in g.edges})


def _witness_payload(w: EquivalenceWitness | None, g: DistinguishedGraph) -> dict[str, Any] | None:
    if w is None:
        return None
    data = iso_to_json(_ordered(w, g))
    data["patch_pairing"] = [{"patch1": i, "patch2": j, "flag": flag} for i, j, flag in w.pairing]
    data["orientation_preserving"] = w.orientation_preserving
    return data


def _witness_lines(w: EquivalenceWitness, g: DistinguishedGraph) -> list[str]:
    iso = _ordered(w, g)
    lines = [f"orientation preserving: {_yn(w.orientation_preserving)}", "vertex map:"]
    lines += [f"  {a} -> {b}" for a, b in iso.vertex_map.items()]
    lines.append("edge map:")
    lines += [f"  {e} -> {_signed(f, s)}" for e, (f, s) in iso.edge_map.items()]
    lines.append("patch pairing:")
    lines += [f"  {i} -> {j} ({flag})" for i, j, flag in w.pairing]
    return lines


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    g = _load(args.file).graph
    payload = {"command": "validate", "valid": True,
               "vertices": len(g.vertices), "edges": len(g.edges), "patches": len(g.patches)}
    _emit(args, payload, [
        "valid: yes",
        f"vertices: {len(g.vertices)}",
        f"edges: {len(g.edges)}",
        f"patches: {len(g.patches)}",
    ])
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load(args.file).graph
    report = is_realizable(g)
    orientable = is_orientable(g) if report.condition_a.passed else None
    connected = graph_connected(g)
    accepted = report.overall
    if args.strict_orientable and not orientable:
        accepted = False
    if args.strict_connected and not connected:
        accepted = False

    payload = {
        "command": "check",
        "verdicts": {k: _verdict_json(v) for k, v in report.verdicts().items()},
        "realizable": report.overall,
        "orientable": orientable,
        "graph_connected": connected,
        "strict": {"orientable": args.strict_orientable, "connected": args.strict_connected},
        "accepted": accepted,
    }
    lines = [f"{_CONDITION_NAMES[k]}: {_verdict_text(v)}" for k, v in report.verdicts().items()]
    lines.append(f"realizable: {_yn(report.overall)}")
    lines.append(f"orientable: {_yn(orientable)}" + (" (required)" if args.strict_orientable else ""))
    lines.append(f"graph connected: {_yn(connected)}" + (" (required)" if args.strict_connected else ""))
    if accepted:
        lines.append("result: accepted")
    else:
        reasons = [_CONDITION_NAMES[k] for k in ("a", "link", "b", "c") if k in report.failing()]
        if args.strict_orientable and not orientable:
            reasons.append("orientability")
        if args.strict_connected and not connected:
            reasons.append("graph connectivity")
        if not reasons:
            reasons = [_CONDITION_NAMES[k] for k, v in report.verdicts().items() if not v.passed]
        lines.append("result: rejected by " + ", ".join(reasons))
    _emit(args, payload, lines)
    return EXIT_OK if accepted else EXIT_NO


def cmd_invariants(args) -> int:
    g = _load(args.file).graph
    counts = {"vertices": len(g.vertices), "edges": len(g.edges), "patches": len(g.patches)}
    try:
        inv = orientability_and_genus(g)
    except NotASurfaceError as exc:
        payload = {"command": "invariants", **counts, "surface": False, "message": str(exc)}
        _emit(args, payload, [f"{k}: {v}" for k, v in counts.items()] + [f"not a closed surface: {exc}"])
        return EXIT_NO
    payload = {"command": "invariants", **counts, "surface": True,
               "euler_characteristic": inv.euler_characteristic,
               "orientable": inv.orientable, "genus": inv.genus}
    lines = [f"{k}: {v}" for k, v in counts.items()]
    lines += [
        f"euler characteristic: {inv.euler_characteristic}",
        f"orientable: {_yn(inv.orientable)}",
        f"genus: {inv.genus if inv.genus is not None else '-'}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_equiv(args) -> int:
    g1 = _load(args.file1).graph
    g2 = _load(args.file2).graph
    w = are_equivalent(g1, g2, oriented=args.oriented, max_edges=args.edge_cap)
    payload = {"command": "equiv", "oriented": args.oriented, "equivalent": w is not None,
               "witness": _witness_payload(w, g1)}
    lines = [f"equivalent: {_yn(w is not None)}"]
    if w is not None:
        lines += _witness_lines(w, g1)
    _emit(args, payload, lines)
    return EXIT_OK if w is not None else EXIT_NO


def cmd_conjugate(args) -> int:
    d1 = _load(args.file1)
    d2 = _load(args.file2)
    g1 = d1.graph
    for path, d in ((args.file1, d1), (args.file2, d2)):
        if d.inner is None:
            raise _Failure({"type": "input", "file": path, "message": "no inner section"},
                           f"{path}: conjugacy needs an inner section")
    try:
        w = are_conjugate(d1.graph, d1.inner, d2.graph, d2.inner, oriented=args.oriented, max_edges=args.edge_cap)
    except ContractViolation as exc:
        raise _Failure({"type": "input", "message": str(exc)}, f"invalid inner automorphism: {exc}") from None
    payload = {"command": "conjugate", "oriented": args.oriented, "conjugate": w is not None,
               "witness": _witness_payload(w, g1)}
    lines = [f"conjugate: {_yn(w is not None)}"]
    if w is not None:
        lines += _witness_lines(w, g1)
    _emit(args, payload, lines)
    return EXIT_OK if w is not None else EXIT_NO


def cmd_canon(args) -> int:
    g = _load(args.file).graph
    code = canonical_code(g, max_edges=args.edge_cap).decode("ascii")
    _emit(args, {"command": "canon", "code": code}, [code])
    return EXIT_OK


def cmd_enum(args) -> int:
    params = EnumerationParams(
        max_edges=args.max_edges,
        require_orientable=args.orientable,
        require_connected=args.connected,
        max_patch_genus=args.max_genus,
        max_candidates=args.max_candidates,
        time_limit=args.time_limit,
    )
    census = enumerate_census(params)
    payload = {
        "command": "enum",
        "params": {"max_edges": params.max_edges, "orientable": params.require_orientable,
                   "connected": params.require_connected, "max_genus": params.max_patch_genus},
        "count": len(census),
        "entries": [
            {
                "code": entry.code.decode("ascii"),
                "class_size": entry.class_size,
                "invariants": {
                    "euler_characteristic": entry.invariants.euler_characteristic,
                    "orientable": entry.invariants.orientable,
                    "genus": entry.invariants.genus,
                },
                "graph": graph_to_json(entry.representative),
            }
            for entry in census
        ],
    }
    if args.json not in (None, "-"):
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if args.json == "-":
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"classes: {len(census)}")
    for entry in census:
        inv = entry.invariants
        genus = inv.genus if inv.genus is not None else "-"
        print(f"{entry.code.decode('ascii')}  chi={inv.euler_characteristic} "
              f"orientable={_yn(inv.orientable)} genus={genus} size={entry.class_size}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distgraph", description="Distinguished graphs of gradient-like 3D fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    capped = argparse.ArgumentParser(add_help=False)
    capped.add_argument("--edge-cap", type=int, default=None, metavar="N",
                        help="refuse graphs with more than N edges (default: $DISTGRAPH_MAX_EDGES or 64)")

    p = sub.add_parser("validate", parents=[common], help="structural validation")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", parents=[common], help="realizability report")
    p.add_argument("file")
    p.add_argument("--strict-orientable", action="store_true", help="also require an orientable surface")
    p.add_argument("--strict-connected", action="store_true", help="also require a connected graph")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariants", parents=[common], help="surface invariants")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("equiv", parents=[common, capped], help="decide equivalence")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--oriented", action="store_true", help="require every patch to match without reversal")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("conjugate", parents=[common, capped], help="decide conjugacy (needs inner sections)")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--oriented", action="store_true", help="require every patch to match without reversal")
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("canon", parents=[common, capped], help="canonical code")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("enum", help="census of realizable classes")
    p.add_argument("--max-edges", type=_positive, required=True)
    p.add_argument("--orientable", action="store_true", help="keep orientable surfaces only")
    p.add_argument("--connected", action="store_true",
                   help="require a connected complex (always enforced by validation)")
    p.add_argument("--max-genus", type=_nonnegative, default=0, help="largest patch genus (default 0)")
    p.add_argument("--max-candidates", type=_positive, default=DEFAULT_MAX_CANDIDATES)
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT, help="seconds")
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="OUT",
                   help="write JSON to OUT, or to stdout when OUT is omitted or '-'")
    p.set_defaults(func=cmd_enum)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the input-error code
        return int(exc.code or 0)
    func: Callable[[Any], int] = args.func
    as_json = getattr(args, "json", False) is True or getattr(args, "json", None) == "-"
    try:
        return func(args)
    except _Failure as exc:
        _report(as_json, exc.payload, exc.text)
        return EXIT_INPUT
    except ResourceError as exc:
        _report(as_json, {"type": "resource", "cap": exc.cap, "limit": exc.limit, "message": str(exc)}, str(exc))
        return EXIT_RESOURCE


def _report(as_json: bool, payload: dict[str, Any], text: str) -> None:
    if as_json:
        print(json.dumps({"error": payload}, indent=2))
    else:
        print(f"error: {text}", file=sys.stderr)


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
