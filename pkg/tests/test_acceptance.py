"""One check per acceptance criterion; each prints a single PASS/FAIL line.

Every comparison is exact rational equality (tolerance zero).  Time limits
are pinned per criterion.  Run directly with ``python3 tests/test_acceptance.py``
or through pytest, which repeats the lines in the terminal summary.
"""

import random
import time
from fractions import Fraction

import pytest

from ucount import corpus, oracle
from ucount.fkt import pfaffian_orientation, uperm_degree3, verify_pfaffian
from ucount.gadgets import (
    DET,
    PERM,
    make_auxiliary_gadget,
    make_clause_gadget,
    make_degree4_vertex_gadget,
    make_iff,
    make_null_edge,
    make_skew_crossover,
)
from ucount.oracle import f_constancy_check, gadget_signature
from ucount.pfaffian import determinant, pfaffian, pfaffian_by_definition
from ucount.reduce import CnfFormula, compile, cubicize, sat_count
from ucount.semipfaffian import find_semi_pfaffian, is_without_tension, udet_cubic, verify_semi_pfaffian

TOLERANCE = 0  # exact arithmetic throughout
PER_TABLE = 1.0
LIMITS = {1: 6.0, 2: 60.0, 3: 600.0, 4: 60.0, 5: 60.0, 6: 600.0, 7: 600.0, 8: 300.0}

PAIRS4 = [("BL", "BR"), ("BL", "TL"), ("BL", "TR"), ("BR", "TL"), ("BR", "TR"), ("TL", "TR")]
GOLDEN = {
    "skew crossover": (
        lambda: make_skew_crossover(PERM),
        PERM,
        {(): 1, ("LB", "RT"): -1, ("LT", "RB"): -1, ("LB", "LT", "RB", "RT"): -1},
    ),
    "iff": (lambda: make_iff(PERM), PERM, {(): 1, ("Lb", "Lt", "Rb", "Rt"): 1}),
    "clause": (
        lambda: make_clause_gadget(PERM),
        PERM,
        {k: 1 for k in [("a",), ("b",), ("c",), ("a", "b"), ("a", "c"), ("b", "c"), ("a", "b", "c")]},
    ),
    "auxiliary": (
        make_auxiliary_gadget,
        DET,
        {(): 1, ("BL", "BR"): 2, ("BR", "TR"): 2, ("TL", "TR"): 2, ("BL", "TL"): 2, ("BL", "TR"): -2, ("BR", "TL"): -2},
    ),
    "null edge": (make_null_edge, DET, {(): 1}),
    "degree-4 vertex": (make_degree4_vertex_gadget, DET, {p: -4 for p in PAIRS4}),
}


def _no_tension_corpus():
    out = {}
    for name, g in corpus.cubic_corpus().items():
        if not is_without_tension(g)[0]:
            continue
        out[name] = (g, find_semi_pfaffian(g))
    return out


def criterion_1():
    worst, bad = 0.0, []
    for name, (make, flavor, want) in GOLDEN.items():
        t0 = time.perf_counter()
        got = dict(gadget_signature(make(), flavor).rows())
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        if got != {k: Fraction(v) for k, v in want.items()} or dt >= PER_TABLE:
            bad.append(name)
    return not bad, f"{len(GOLDEN)} tables, slowest {worst:.2f}s" + (f", failing {bad}" if bad else "")


def criterion_2():
    graphs = corpus.fkt_corpus(24)
    n_random = sum(1 for k in graphs if k.startswith("random"))
    bad = [k for k, g in graphs.items() if uperm_degree3(g) != oracle.uperm(g)]
    return not bad and n_random >= 20, f"{len(graphs)} graphs ({n_random} random)" + (f", failing {bad}" if bad else "")


def criterion_3():
    graphs = _no_tension_corpus()
    bad = [k for k, (g, og) in graphs.items() if udet_cubic(g, og) != oracle.udet(g)]
    cube = udet_cubic(corpus.cube())
    ok = not bad and cube == -3 and {"cube", "hexagonal-prism"} <= set(graphs)
    return ok, f"{len(graphs)} graphs without tension, cube {cube}" + (f", failing {bad}" if bad else "")


def criterion_4():
    graphs = _no_tension_corpus()
    res = {k: f_constancy_check(og) for k, (g, og) in graphs.items()}
    bad = [k for k, r in res.items() if r[0] != "constant"]
    return not bad, f"{len(res)} graphs constant" + (f", violations {bad}" if bad else "")


def criterion_5():
    rng = random.Random(2024)
    count = 0
    for n in (4, 6, 8, 10):
        for _ in range(100):
            a = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    x = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
                    a[i][j], a[j][i] = x, -x
            p = pfaffian(a)
            if p * p != determinant(a) or p != pfaffian_by_definition(a):
                return False, f"mismatch at n={n}"
            count += 1
    return True, f"{count} matrices"


def criterion_6():
    forms = corpus.cnf_corpus()
    bad, slowest = [], 0.0
    for clauses in forms:
        t0 = time.perf_counter()
        phi = CnfFormula.of(clauses)
        want = sat_count(phi)
        perm = oracle.uperm(compile(phi, PERM).graph)
        det = (-1) ** phi.m * oracle.udet(compile(phi, DET).graph)
        slowest = max(slowest, time.perf_counter() - t0)
        if not (perm == det == want):
            bad.append(clauses)
    return not bad and len(forms) >= 15, f"{len(forms)} formulas, slowest {slowest:.2f}s" + (f", failing {bad}" if bad else "")


def criterion_7():
    parts, ok = [], True
    for name, g, k in (("bowtie", corpus.bowtie(), 1), ("prism+diagonal", corpus.prism_with_diagonal(), 2)):
        res = cubicize(g)
        before, after = oracle.udet(g), oracle.udet(res.graph)
        good = after == (-4) ** k * before and set(res.graph.degrees()) == {3}
        ok &= good
        parts.append(f"{name} k={k}: {before} -> {after}")
    return ok, "; ".join(parts)


def criterion_8():
    checked = 0
    graphs = {**corpus.fkt_corpus(24), **corpus.cubic_corpus()}
    for name, g in graphs.items():
        if g.n > 16 or not g.is_connected() or not g.is_simple():
            continue
        if verify_pfaffian(pfaffian_orientation(g).graph) is not None:
            return False, f"Pfaffian orientation of {name} fails"
        checked += 1
    for name, (g, og) in _no_tension_corpus().items():
        if not verify_semi_pfaffian(og)[0]:
            return False, f"semi-Pfaffian orientation of {name} fails"
        checked += 1
    return True, f"{checked} orientations verified"


CRITERIA = {
    1: ("golden gadget signatures", criterion_1),
    2: ("FKT equivalence", criterion_2),
    3: ("cubic determinant equivalence", criterion_3),
    4: ("f constancy", criterion_4),
    5: ("Pfaffian core", criterion_5),
    6: ("end-to-end reduction", criterion_6),
    7: ("cubicization", criterion_7),
    8: ("orientation verification", criterion_8),
}


def run_criterion(k):
    name, fn = CRITERIA[k]
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    ok = ok and dt < LIMITS[k]
    line = f"criterion {k} {name}: {'PASS' if ok else 'FAIL'} ({detail}; {dt:.2f}s of {LIMITS[k]:.0f}s)"
    print(line)
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, acceptance_log):
    ok, line = run_criterion(k)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k)[0] for k in sorted(CRITERIA)]
    raise SystemExit(0 if all(results) else 1)
