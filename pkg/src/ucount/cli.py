"""Command line interface: ``ucount <command> ...``.

Exit codes: 0 success, 1 verification or golden mismatch, 2 input error,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import signal
import sys
import time
from pathlib import Path

from . import fkt, oracle, reduce, semipfaffian
from .errors import InputError, ResourceBoundExceeded, UcountError, VerificationError
from .gadget import gadget_from_json
from .gadgets import GADGETS
from .graph import SkewMatrix, graph_from_json, graph_to_json, to_rational
from .pfaffian import pfaffian

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class UsageError(InputError):
    pass


# helpers

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def _load_graph(path: str):
    return graph_from_json(_load_json(path))


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _write_json(path: str, data) -> None:
    Path(path).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


def _check_vertices(n: int, args) -> None:
    if args.max_vertices is not None and n > args.max_vertices:
        raise ResourceBoundExceeded(f"{n} vertices exceed --max-vertices {args.max_vertices}")


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=1, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _report(args, inputs, **fields) -> dict:
    rep = {"command": " ".join(args.argv), "inputs": {p: _digest(p) for p in inputs}}
    rep.update(fields)
    return rep


# commands

def cmd_count(args) -> int:
    g = _load_graph(args.graph)
    q, method = args.quantity, args.method
    t0 = time.perf_counter()
    if method == "oracle":
        _check_vertices(g.n, args)
        value = {"udet": oracle.udet, "uperm": oracle.uperm, "perfmatch": oracle.perfmatch}[q](g)
    elif method == "fkt":
        if q == "uperm":
            value = fkt.uperm_degree3(g)
        elif q == "perfmatch":
            value = fkt.perfmatch_planar(g)
        else:
            raise UsageError("the fkt method computes uperm and perfmatch only")
    elif method == "semipfaffian":
        if q != "udet":
            raise UsageError("the semipfaffian method computes udet only")
        _check_vertices(g.n, args)
        value = semipfaffian.udet_cubic(g)
    else:
        raise UsageError(f"unknown method {method}")
    check = None
    if args.cross_check and method != "oracle":
        _check_vertices(g.n, args)
        ref = {"udet": oracle.udet, "uperm": oracle.uperm, "perfmatch": oracle.perfmatch}[q](g)
        check = {"oracle": str(ref), "pass": ref == value}
    rep = _report(args, [args.graph], quantity=q, method=method, result=str(value),
                  seconds=round(time.perf_counter() - t0, 6), cross_check=check)
    lines = [str(value)]
    if check is not None:
        lines.append(f"cross-check against oracle ({check['oracle']}): {'pass' if check['pass'] else 'FAIL'}")
    _emit(args, rep, lines)
    return EXIT_OK if check is None or check["pass"] else EXIT_MISMATCH


def _load_gadget(args):
    if args.builtin:
        if args.builtin not in GADGETS:
            raise UsageError(f"unknown gadget {args.builtin}; choose from {', '.join(sorted(GADGETS))}")
        return GADGETS[args.builtin](args.mode)
    if not args.gadget:
        raise UsageError("give a gadget file or --builtin NAME")
    return gadget_from_json(_load_json(args.gadget))


def _parse_golden(data) -> dict:
    entries = data["entries"] if isinstance(data, dict) else data
    return {frozenset(item["stubs"]): to_rational(item["value"]) for item in entries}


def cmd_signature(args) -> int:
    gad = _load_gadget(args)
    table = oracle.gadget_signature(gad, args.flavor)
    rows = [{"stubs": list(k), "value": str(v)} for k, v in table.rows()]
    golden = None
    if args.golden:
        want = _parse_golden(_load_json(args.golden))
        golden = {"file": args.golden, "pass": table == want}
    inputs = [p for p in (args.gadget, args.golden) if p]
    rep = _report(args, inputs, gadget=gad.name, flavor=args.flavor, entries=rows, golden=golden)
    lines = [f"{gad.name} ({args.flavor})"]
    lines += [f"  {{{', '.join(r['stubs'])}}}: {r['value']}" for r in rows]
    if golden is not None:
        lines.append(f"golden {args.golden}: {'pass' if golden['pass'] else 'MISMATCH'}")
    _emit(args, rep, lines)
    return EXIT_OK if golden is None or golden["pass"] else EXIT_MISMATCH


def cmd_compile(args) -> int:
    phi = reduce.parse_dimacs(_read(args.cnf))
    res = reduce.compile(phi, args.mode)
    if args.cubicize:
        if args.mode != "det":
            raise UsageError("--cubicize needs --mode det")
        cub = reduce.cubicize(res.graph)
        cub.scale *= res.scale
        res = cub
    _write_json(args.output, graph_to_json(res.graph))
    prov_path = args.provenance or str(Path(args.output).with_suffix(".provenance.json"))
    _write_json(prov_path, res.provenance_json())
    rep = _report(args, [args.cnf], mode=args.mode, vertices=res.graph.n, edges=res.graph.m,
                  scale=str(res.scale), clauses=phi.m, output=args.output, provenance=prov_path)
    _emit(args, rep, [f"wrote {args.output}: {res.graph.n} vertices, {res.graph.m} edges, scale {res.scale}"])
    return EXIT_OK


def cmd_satcount(args) -> int:
    phi = reduce.parse_dimacs(_read(args.cnf))
    value = reduce.sat_count(phi)
    _emit(args, _report(args, [args.cnf], result=str(value)), [str(value)])
    return EXIT_OK


def _kind(args) -> str:
    if args.pfaffian == args.semi_pfaffian:
        raise UsageError("choose exactly one of --pfaffian, --semi-pfaffian")
    return "pfaffian" if args.pfaffian else "semi-pfaffian"


def cmd_orient(args) -> int:
    g = _load_graph(args.graph)
    kind = _kind(args)
    if kind == "pfaffian":
        og = fkt.pfaffian_orientation(g).graph
    else:
        _check_vertices(g.n, args)
        og = semipfaffian.find_semi_pfaffian(g)
    _write_json(args.output, graph_to_json(og))
    _emit(args, _report(args, [args.graph], kind=kind, output=args.output), [f"wrote {args.output}"])
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    kind = _kind(args)
    _check_vertices(g.n, args)
    if not g.is_oriented():
        raise InputError("graph must be fully oriented")
    if kind == "pfaffian":
        bad = fkt.verify_pfaffian(g)
        ok = bad is None
    else:
        ok, bad = semipfaffian.verify_semi_pfaffian(g)
    witness = None if bad is None else {"vertices": list(bad.vertices), "edges": list(bad.edges)}
    rep = _report(args, [args.graph], kind=kind, passed=ok, witness=witness)
    line = "pass" if ok else f"FAIL: central cycle {list(bad.vertices)}"
    _emit(args, rep, [line])
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_tension(args) -> int:
    g = _load_graph(args.graph)
    _check_vertices(g.n, args)
    if args.cycle:
        cycles = [[int(x) for x in args.cycle.split(",")]]
    else:
        cycles = [c for c in oracle.enumerate_central_cycles(g) if c.length % 2 == 0]
    reps = [semipfaffian.tension(g, c) for c in cycles]
    rows = [{"cycle": list(r.cycle.vertices), "out_counts": list(r.out_counts), "tension": r.tension} for r in reps]
    rep = _report(args, [args.graph], cycles=rows, without_tension=all(r.tension == 0 for r in reps))
    lines = [f"{r['cycle']}: tension {r['tension']}" for r in rows] or ["no even central cycles"]
    _emit(args, rep, lines)
    return EXIT_OK


def cmd_pfaffian(args) -> int:
    data = _load_json(args.matrix)
    if not isinstance(data, list):
        raise InputError("matrix must be a JSON list of rows")
    value = pfaffian(SkewMatrix([[to_rational(x) for x in row] for row in data]))
    _emit(args, _report(args, [args.matrix], result=str(value)), [str(value)])
    return EXIT_OK


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-vertices", type=int, default=None, help="refuse exponential work above this size")
    common.add_argument("--max-seconds", type=float, default=None, help="wall-clock limit")

    p = argparse.ArgumentParser(prog="ucount", description="Exact cycle-cover counting on planar graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count", parents=[common], help="udet, uperm or perfmatch of a graph")
    s.add_argument("graph")
    s.add_argument("--quantity", choices=["udet", "uperm", "perfmatch"], required=True)
    s.add_argument("--method", choices=["oracle", "fkt", "semipfaffian"], default="oracle")
    s.add_argument("--cross-check", action="store_true", help="also run the oracle and compare")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("signature", parents=[common], help="signature table of a gadget")
    s.add_argument("gadget", nargs="?")
    s.add_argument("--builtin", help=f"one of: {', '.join(sorted(GADGETS))}")
    s.add_argument("--mode", choices=["det", "perm"], default="perm", help="mode for --builtin")
    s.add_argument("--flavor", choices=["det", "perm"], default="perm")
    s.add_argument("--golden", help="JSON table to compare against")
    s.set_defaults(func=cmd_signature)

    s = sub.add_parser("compile", parents=[common], help="3-CNF to planar graph")
    s.add_argument("cnf")
    s.add_argument("--mode", choices=["det", "perm"], required=True)
    s.add_argument("--cubicize", action="store_true")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--provenance", help="sidecar path (default: OUTPUT with .provenance.json)")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("satcount", parents=[common], help="model count by truth table")
    s.add_argument("cnf")
    s.set_defaults(func=cmd_satcount)

    for name, func, text in (("orient", cmd_orient, "write an orientation"), ("verify", cmd_verify, "check an orientation")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("graph")
        s.add_argument("--pfaffian", action="store_true")
        s.add_argument("--semi-pfaffian", action="store_true")
        if name == "orient":
            s.add_argument("-o", "--output", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("tension", parents=[common], help="tension of even central cycles")
    s.add_argument("graph")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--all-central", action="store_true", help="every even central cycle (default)")
    g.add_argument("--cycle", help="comma-separated vertex sequence")
    s.set_defaults(func=cmd_tension)

    s = sub.add_parser("pfaffian", parents=[common], help="Pfaffian of a skew matrix in JSON")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_pfaffian)
    return p


def _alarm(signum, frame):
    raise ResourceBoundExceeded("time limit exceeded")


def threads() -> int:
    """Enumeration worker cap from UCOUNT_THREADS (enumeration runs in one thread)."""
    try:
        return max(1, int(os.environ.get("UCOUNT_THREADS", "1")))
    except ValueError:
        return 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = parser.parse_args(argv)
        args.argv = argv
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.max_seconds is not None:
        signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, args.max_seconds)
    try:
        return args.func(args)
    except ResourceBoundExceeded as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UcountError, ZeroDivisionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if args.max_seconds is not None:
            signal.setitimer(signal.ITIMER_REAL, 0)


if __name__ == "__main__":
    sys.exit(main())
