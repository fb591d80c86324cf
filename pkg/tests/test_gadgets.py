import dataclasses
import time
from fractions import Fraction

import pytest

from ucount.errors import InputError
from ucount.gadget import gadget_from_json, gadget_to_json
from ucount.gadgets import (
    DET,
    GADGETS,
    PERM,
    make_auxiliary_gadget,
    make_clause_gadget,
    make_crossing_block,
    make_degree4_vertex_gadget,
    make_iff,
    make_null_edge,
    make_skew_crossover,
    make_variable_gadget,
    mode_d,
)
from ucount.oracle import gadget_signature

CROSSOVER_PERM = {(): 1, ("LB", "RT"): -1, ("LT", "RB"): -1, ("LB", "LT", "RB", "RT"): -1}
IFF = {(): 1, ("Lb", "Lt", "Rb", "Rt"): 1}
CLAUSE_PERM = {k: 1 for k in [("a",), ("b",), ("c",), ("a", "b"), ("a", "c"), ("b", "c"), ("a", "b", "c")]}
AUXILIARY = {
    (): 1,
    ("BL", "BR"): 2,
    ("BR", "TR"): 2,
    ("TL", "TR"): 2,
    ("BL", "TL"): 2,
    ("BL", "TR"): -2,
    ("BR", "TL"): -2,
}
PAIRS4 = [("BL", "BR"), ("BL", "TL"), ("BL", "TR"), ("BR", "TL"), ("BR", "TR"), ("TL", "TR")]


def table(g, flavor):
    return {k: v for k, v in gadget_signature(g, flavor).rows()}


def test_mode_d():
    assert mode_d(PERM) == -1 and mode_d(DET) == 1
    with pytest.raises(InputError):
        mode_d("other")


def test_skew_crossover_perm():
    assert table(make_skew_crossover(PERM), PERM) == CROSSOVER_PERM


def test_skew_crossover_det_mode_is_opposite():
    det = table(make_skew_crossover(DET), DET)
    assert det == {k: -v for k, v in CROSSOVER_PERM.items()}


@pytest.mark.parametrize("mode", [PERM, DET])
def test_iff(mode):
    assert table(make_iff(mode), mode) == IFF
    assert table(make_iff(mode, allow_multiedges=True), mode) == IFF


def test_clause_perm_and_det():
    assert table(make_clause_gadget(PERM), PERM) == CLAUSE_PERM
    det = table(make_clause_gadget(DET), DET)
    assert set(det) == set(CLAUSE_PERM)
    assert all(abs(v) == 1 for v in det.values())
    # the all-false configuration has no cover
    assert () not in det


def test_auxiliary():
    assert table(make_auxiliary_gadget(), DET) == AUXILIARY


def test_null_edge_is_never_traversed():
    assert table(make_null_edge(), DET) == {(): 1}


def test_degree4_vertex():
    assert table(make_degree4_vertex_gadget(), DET) == {p: -4 for p in PAIRS4}


def test_variable_gadget():
    assert table(make_variable_gadget(0, 0, PERM), PERM) == {("x",): 1, ("~x",): 1}
    assert table(make_variable_gadget(0, 0, DET), DET) == {("x",): 1, ("~x",): 1}


def test_crossing_block_perm():
    t = table(make_crossing_block(PERM), PERM)
    assert t[()] == 1
    assert t[("A_in", "A_out")] == -1 and t[("B_in", "B_out")] == -1
    assert t[("r_in", "r_out")] == 1
    assert t[("A_in", "A_out", "B_in", "B_out", "r_in", "r_out")] == 1


@pytest.mark.parametrize("name", sorted(GADGETS))
def test_every_builtin_is_fast(name):
    g = GADGETS[name]()
    t0 = time.perf_counter()
    gadget_signature(g, DET)
    assert time.perf_counter() - t0 < 1.0


def test_gadget_json_round_trip():
    g = make_iff(PERM)
    h = gadget_from_json(gadget_to_json(g))
    assert gadget_signature(h, PERM) == gadget_signature(g, PERM)


def _mutate_weight(g, eid, w):
    return dataclasses.replace(g, graph=g.graph.with_weights({eid: Fraction(w)}))


def test_mutation_removing_the_d_edge_changes_the_crossover():
    g = make_skew_crossover(PERM)
    (d_edge,) = [e.id for e in g.graph.edges if e.w == -1]
    assert table(_mutate_weight(g, d_edge, 0), PERM) != CROSSOVER_PERM


def test_mutation_flipping_an_iff_sign_is_detected():
    g = make_iff(PERM)
    eid = next(e.id for e in g.graph.edges if e.w == -1)
    assert table(_mutate_weight(g, eid, 1), PERM) != IFF


def test_mutation_of_clause_gadget_breaks_a_row():
    g = make_clause_gadget(PERM)
    assert table(_mutate_weight(g, 0, 2), PERM) != CLAUSE_PERM
