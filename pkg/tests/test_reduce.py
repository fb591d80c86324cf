import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ucount import corpus, oracle
from ucount.errors import CnfParseError, DegreeTooHigh, InputError, NoPadding, RoutingNotPlanar, TooManyVariables
from ucount.graph import graph_to_json, validate_embedding
from ucount.oracle import enumerate_cycle_covers
from ucount.reduce import (
    DET,
    PERM,
    CnfFormula,
    compile,
    cubicize,
    make_extended_iff,
    parse_dimacs,
    sat_count,
    synchronize_edges,
)


def test_parse_dimacs():
    phi = parse_dimacs("c demo\np cnf 3 2\n1 -2 3 0\n-1 2\n -3 0\n")
    assert phi.n == 3 and phi.clauses == ((1, -2, 3), (-1, 2, -3))
    assert parse_dimacs(phi.to_dimacs()) == phi


@pytest.mark.parametrize(
    "text",
    [
        "1 2 3 0\n",
        "p cnf 3 1\n1 2 0\n",
        "p cnf 3 2\n1 2 3 0\n",
        "p cnf 2 1\n1 2 3 0\n",
        "p cnf 3 1\n1 2 x 0\n",
        "p cnf 3 1\n1 2 3\n",
        "p dnf 3 1\n1 2 3 0\n",
    ],
)
def test_parse_dimacs_rejects(text):
    with pytest.raises(CnfParseError):
        parse_dimacs(text)


def test_sat_count_examples():
    assert sat_count(CnfFormula.of([(1, 2, 3)])) == 7
    assert sat_count(CnfFormula.of([(1, 1, 1), (-1, -1, -1)])) == 0
    assert sat_count(CnfFormula.of([(1, 2, 3), (-1, -2, -3)])) == 6
    assert sat_count(CnfFormula(5, ((1, 2, 3),))) == 28
    with pytest.raises(TooManyVariables):
        sat_count(CnfFormula(25, ()))


@given(st.lists(st.tuples(*[st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v]))] * 3), max_size=6))
def test_sat_count_matches_brute_force(clauses):
    phi = CnfFormula(6, tuple(clauses))
    brute = sum(
        all(any((a >> (abs(x) - 1) & 1) == (x > 0) for x in c) for c in clauses) for a in range(64)
    )
    assert sat_count(phi) == brute


@pytest.mark.parametrize("clauses", [((1, 2, 3),), ((1, -1, 1),), ((1, 2, 3), (-1, -2, -3))])
def test_end_to_end_both_modes(clauses):
    phi = CnfFormula.of(clauses)
    want = sat_count(phi)
    assert oracle.uperm(compile(phi, PERM).graph) == want
    assert (-1) ** phi.m * oracle.udet(compile(phi, DET).graph) == want


@pytest.mark.parametrize("mode", [PERM, DET])
def test_compile_output_shape(mode):
    res = compile(CnfFormula.of([(1, -2, 3), (-1, 2, -3)]), mode)
    g = res.graph
    validate_embedding(g)
    assert set(g.degrees()) <= {2, 3, 4}
    prov = res.provenance_json()
    assert len(prov["vertices"]) == g.n and len(prov["edges"]) == g.m


def test_compile_is_deterministic():
    phi = CnfFormula.of([(1, 2, -3), (3, -1, 2)])
    a = json.dumps(graph_to_json(compile(phi, PERM).graph), sort_keys=True)
    b = json.dumps(graph_to_json(compile(phi, PERM).graph), sort_keys=True)
    assert a == b


def test_weights_stay_in_small_set():
    g = compile(CnfFormula.of([(1, 2, 3), (-1, -2, -3)]), DET).graph
    assert {e.w for e in g.edges} <= {Fraction(-1), Fraction(-1, 2), Fraction(1)}


def _constrained(g, e1, e2, signed):
    total = Fraction(0)
    for c in enumerate_cycle_covers(g):
        if (e1 in c.edges) == (e2 in c.edges):
            total += -c.weight if signed and c.components % 2 else c.weight
    return total * ((-1) ** g.n if signed else 1)


@pytest.mark.parametrize("e1, e2", [(0, 2), (0, 1), (1, 9), (0, 6)])
def test_synchronize_edges_counts_both_or_neither(e1, e2):
    g = corpus.cube()
    assert oracle.uperm(synchronize_edges(g, e1, e2, PERM)) == _constrained(g, e1, e2, False)
    assert oracle.udet(synchronize_edges(g, e1, e2, DET)) == _constrained(g, e1, e2, True)


def test_extended_iff_with_explicit_corridor():
    g = corpus.cube()
    plan = make_extended_iff(g, 0, 6, crossed=None)
    again = make_extended_iff(g, 0, 6, crossed=list(plan.crossed))
    assert again.crossed == plan.crossed
    with pytest.raises(RoutingNotPlanar):
        make_extended_iff(g, 0, 2, crossed=[6])
    with pytest.raises(InputError):
        make_extended_iff(g, 0, 0)


@pytest.mark.parametrize(
    "host, k",
    [(corpus.bowtie(), 1), (corpus.wheel(4), 1), (corpus.prism_with_diagonal(), 2), (corpus.cycle(5), 0)],
)
def test_cubicize(host, k):
    res = cubicize(host)
    assert set(res.graph.degrees()) == {3}
    validate_embedding(res.graph)
    assert abs(res.scale) == 4**k
    assert oracle.udet(res.graph) == res.scale * oracle.udet(host)


def test_cubicize_scale_is_plus_four_per_vertex():
    res = cubicize(corpus.wheel(4))
    assert res.scale == 4
    assert (oracle.udet(corpus.wheel(4)), oracle.udet(res.graph)) == (4, 16)


def test_cubicize_weighted_odd_cycle():
    g = corpus.random_weights(corpus.cycle(5), 4)
    res = cubicize(g)
    assert res.scale == -1
    assert oracle.udet(res.graph) == -oracle.udet(g)


def test_cubicize_preconditions():
    with pytest.raises(DegreeTooHigh):
        cubicize(corpus.wheel(5))
    with pytest.raises(InputError):
        cubicize(corpus.bowtie(), mode=PERM)
    from ucount.graph import Multigraph

    path = Multigraph.from_pairs(2, [(0, 1)], rotation={0: [(0, 0)], 1: [(0, 1)]})
    with pytest.raises(NoPadding):
        cubicize(path)


def test_compile_then_cubicize_single_clause():
    # about 1100 cubic vertices; counted by the transfer method
    phi = CnfFormula.of([(1, 2, 3)])
    res = compile(phi, DET)
    cub = cubicize(res.graph)
    assert set(cub.graph.degrees()) == {3}
    assert (-1) ** phi.m * oracle.udet(cub.graph) == cub.scale * sat_count(phi)
