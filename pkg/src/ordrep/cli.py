"""Command-line interface.

Exit status: 0 success, 1 a check came out false, 2 bad input or usage.
JSON goes to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jsonio
from .build import (
    EXACT_CLASS_CAP,
    build_indicator_mu,
    build_minimal_partial_rp_mu,
    build_rp_mu,
    build_ss,
    count_labelings,
    enumerate_labelings,
)
from .errors import MalformedInput, OrdRepError
from .fixtures import GENERATORS, generate_example
from .partial import Kind
from .relation import PROPERTIES, classify, contours, isolated_points, quotient, to_dot, width
from .topology import (
    FiniteTopology,
    chain_scott,
    check_contour_openness,
    check_regular_preorder,
    closed_contours_harness,
    is_connected,
    is_continuous,
    schmeidler_harness,
    scott_topology,
    totality_harness,
)
from .trace import clock_report, generate_trace, happened_before, parse_trace
from .verify import verify

SCHEMA = jsonio.SCHEMA


class Exit(Exception):
    def __init__(self, code):
        self.code = code


def _out(doc, stream):
    stream.write(jsonio.dumps(doc))


def _relation(args):
    return jsonio.relation_from_json(jsonio.load_path(args.relation))


def _topology(path, ground):
    return jsonio.topology_from_json(jsonio.load_path(path), ground)


def _codomain(args):
    if getattr(args, "codomain_chain", None):
        return chain_scott(args.codomain_chain)
    if getattr(args, "codomain", None):
        return _topology(args.codomain, None)
    return None


# -- verbs ------------------------------------------------------------------

def cmd_classify(args, out):
    R = _relation(args)
    if args.format == "dot":
        out.write(to_dot(R))
        return 0
    _out({"schema": SCHEMA, "elements": list(R.elements), "properties": classify(R).as_dict()}, out)
    return 0


def cmd_axioms(args, out):
    R = _relation(args)
    report = classify(R).as_dict()
    wanted = args.require or ["preorder"]
    result = {name: report[name] for name in wanted}
    _out({"schema": SCHEMA, "ok": all(v["holds"] for v in result.values()), "axioms": result}, out)
    return 0 if all(v["holds"] for v in result.values()) else 1


def cmd_contours(args, out):
    R = _relation(args)
    names = [args.element] if args.element else list(R.elements)
    sets = {}
    for x in names:
        c = contours(R, x)
        sets[x] = {key: sorted(getattr(c, attr), key=R.ground.index)
                   for key, attr in (("l", "lower"), ("r", "upper"), ("d", "down"), ("i", "up"))}
    iso = sorted(isolated_points(R), key=R.ground.index)
    _out({"schema": SCHEMA, "contours": sets, "isolated": iso}, out)
    return 0


def cmd_width(args, out):
    R = _relation(args)
    w = width(R)
    q = quotient(R)
    _out({"schema": SCHEMA, "width": w.width, "antichain": list(w.witness),
          "classes": [list(c) for c in q.classes]}, out)
    return 0


def cmd_labelings(args, out):
    P = _relation(args)
    if args.count_only:
        _out({"schema": SCHEMA, "count": count_labelings(P)}, out)
        return 0
    listed = []
    for lab in enumerate_labelings(P):
        listed.append({x: int(v) for x, v in lab.items()})
        if args.limit is not None and len(listed) >= args.limit:
            break
    _out({"schema": SCHEMA, "count": len(listed), "labelings": listed}, out)
    return 0


def cmd_represent(args, out):
    R = _relation(args)
    kind = Kind(args.kind)
    optimal, stats = None, {}
    if kind is Kind.MULTI_UTILITY:
        family = build_indicator_mu(R)
    elif kind is Kind.RP_MULTI_UTILITY:
        report = build_rp_mu(R)
        family, stats = report.family, report.stats
    elif kind is Kind.PARTIAL_RP_MU:
        mode = args.mode
        if mode == "auto":
            mode = "exact" if len(quotient(R).classes) <= EXACT_CLASS_CAP else "greedy"
        report = build_minimal_partial_rp_mu(R, mode=mode)
        family, optimal, stats = report.family, report.optimal, report.stats
    else:
        report = build_ss(R)
        family, optimal, stats = report.family, report.optimal, report.stats
    doc = jsonio.family_to_json(family)
    doc["optimal"] = optimal
    doc["stats"] = stats
    _out(doc, out)
    return 0


def cmd_verify(args, out):
    R = _relation(args)
    F = jsonio.family_from_json(jsonio.load_path(args.family), R.ground, args.kind)
    verdict = verify(R, F, limit=None if args.all else 1)
    doc = {"schema": SCHEMA, "kind": F.kind.value, **verdict.as_dict()}
    _out(doc, out)
    return 0 if verdict.ok else 1


def cmd_scott(args, out):
    P = _relation(args)
    _out(jsonio.topology_to_json(scott_topology(P)), out)
    return 0


def cmd_continuity(args, out):
    R = _relation(args)
    tau = _topology(args.topology, R.ground)
    F = jsonio.family_from_json(jsonio.load_path(args.family), R.ground, Kind.PARTIAL_MU)
    codomain = _codomain(args)
    rows = []
    for k, f in enumerate(F.functions):
        v = is_continuous(f, tau, codomain)
        rows.append({"function": f.name or f"u{k + 1}", **v.as_dict()})
    ok = all(r["ok"] for r in rows)
    doc = {"schema": SCHEMA, "codomain": "real line" if codomain is None else "finite",
           "connected": is_connected(tau), "ok": ok, "functions": rows,
           "regular": check_regular_preorder(R, tau).as_dict(),
           "open_contours": check_contour_openness(R, tau).as_dict()}
    _out(doc, out)
    return 0 if ok else 1


def cmd_harness(args, out):
    R = _relation(args)
    tau = _topology(args.topology, R.ground) if args.topology else scott_topology(R)
    if args.which == "schmeidler":
        report = schmeidler_harness(R, tau)
    else:
        if not args.family:
            raise MalformedInput(f"harness {args.which} needs --family")
        F = jsonio.family_from_json(jsonio.load_path(args.family), R.ground, Kind.PARTIAL_RP_MU)
        run = totality_harness if args.which == "totality" else closed_contours_harness
        report = run(R, tau, F, _codomain(args))
    _out({"schema": SCHEMA, **report.as_dict()}, out)
    return 0 if report.status == "PASS" else 1


def _params(pairs):
    params = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise MalformedInput(f"parameter must look like key=value: {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise MalformedInput(f"parameter {key} must be an integer") from None
    return params


def cmd_example(args, out):
    ex = generate_example(args.name, **_params(args.param))
    doc = {"schema": SCHEMA, "name": ex.name, "note": ex.note,
           "relation": jsonio.relation_to_json(ex.relation),
           "family": None if ex.family is None else jsonio.family_to_json(ex.family),
           "topologies": {k: jsonio.topology_to_json(t) for k, t in ex.topologies.items()},
           "codomain": None if ex.codomain is None else jsonio.topology_to_json(ex.codomain)}
    if args.part:
        doc = doc[args.part]
        if doc is None:
            raise MalformedInput(f"example {args.name} has no {args.part}")
    _out(doc, out)
    return 0


def _read_trace(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    return parse_trace(text)


def cmd_trace(args, out):
    if args.action == "gen":
        t = generate_trace(args.procs, args.events, args.msg_prob, args.seed)
        out.write(t.to_jsonl())
        return 0
    t = _read_trace(args.file)
    if args.action == "ingest":
        P = happened_before(t)
        if args.format == "dot":
            out.write(to_dot(P, name="happened_before"))
            return 0
        _out({"schema": SCHEMA, "processes": t.processes, "events": len(t.events),
              "relation": jsonio.relation_to_json(P)}, out)
        return 0
    report = clock_report(t, args.mode)
    _out({"schema": SCHEMA, **report.as_dict()}, out)
    return 0 if report.verified else 1


# -- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise Exit(2)

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise Exit(status)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordrep", description="Preorders, partial multi-utilities and finite topologies.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def with_relation(p):
        p.add_argument("--relation", required=True, help="relation JSON file")
        return p

    p = with_relation(sub.add_parser("classify", help="order-theoretic properties with counterexamples"))
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_classify)

    p = with_relation(sub.add_parser("axioms", help="check named axioms; exit 1 if one fails"))
    p.add_argument("--require", nargs="+", choices=PROPERTIES)
    p.set_defaults(func=cmd_axioms)

    p = with_relation(sub.add_parser("contours", help="l(x), r(x), d(x), i(x) and isolated points"))
    p.add_argument("--element")
    p.set_defaults(func=cmd_contours)

    p = with_relation(sub.add_parser("width", help="width and a maximum antichain"))
    p.set_defaults(func=cmd_width)

    p = with_relation(sub.add_parser("labelings", help="labelings (linear extensions) of a partial order"))
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_labelings)

    p = with_relation(sub.add_parser("represent", help="build a representation family"))
    p.add_argument("--kind", required=True, choices=["mu", "rp-mu", "partial-rp-mu", "ss"])
    p.add_argument("--mode", choices=["exact", "greedy", "auto"], default="auto")
    p.set_defaults(func=cmd_represent)

    p = with_relation(sub.add_parser("verify", help="check a family against a relation"))
    p.add_argument("--family", required=True)
    p.add_argument("--kind", choices=[k.value for k in Kind])
    p.add_argument("--all", action="store_true", help="report every violation")
    p.set_defaults(func=cmd_verify)

    p = with_relation(sub.add_parser("scott", help="Scott topology of a finite partial order"))
    p.set_defaults(func=cmd_scott)

    def with_codomain(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--codomain", help="codomain topology JSON (points labelled by values)")
        g.add_argument("--codomain-chain", nargs="+", metavar="V",
                       help="codomain is these values with the Scott topology of <=")

    p = with_relation(sub.add_parser("continuity", help="continuity of each function of a family"))
    p.add_argument("--topology", required=True)
    p.add_argument("--family", required=True)
    with_codomain(p)
    p.set_defaults(func=cmd_continuity)

    p = with_relation(sub.add_parser("harness", help="evaluate a topological proposition on one instance"))
    p.add_argument("which", choices=["totality", "closed-contours", "schmeidler"])
    p.add_argument("--topology", help="topology JSON (default: Scott topology)")
    p.add_argument("--family")
    with_codomain(p)
    p.set_defaults(func=cmd_harness)

    p = sub.add_parser("example", help="emit a named fixture")
    p.add_argument("name", choices=sorted(GENERATORS))
    p.add_argument("--param", action="append", metavar="KEY=INT")
    p.add_argument("--part", choices=["relation", "family", "topologies", "codomain"])
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("trace", help="message-passing traces")
    tsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    t = tsub.add_parser("ingest", help="happened-before relation of a trace file")
    t.add_argument("file")
    t.add_argument("--format", choices=["json", "dot"], default="json")
    t = tsub.add_parser("gen", help="seeded random trace as JSON lines")
    t.add_argument("--procs", type=int, required=True)
    t.add_argument("--events", type=int, required=True)
    t.add_argument("--msg-prob", type=float, default=0.3)
    t.add_argument("--seed", type=int, default=0)
    t = tsub.add_parser("clocks", help="partial clocks versus vector clocks")
    t.add_argument("file")
    t.add_argument("--mode", choices=["exact", "greedy", "auto"], default="auto")
    p.set_defaults(func=cmd_trace)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    saved = sys.stderr
    sys.stderr = stderr
    try:
        try:
            args = build_parser().parse_args(argv)
        except Exit as e:
            return e.code
        try:
            return args.func(args, stdout)
        except OrdRepError as exc:
            stderr.write(f"ordrep {args.verb}: {type(exc).__name__}: {exc}\n")
            return 2
    finally:
        sys.stderr = saved


def main():
    sys.exit(run())
