from fractions import Fraction

import pytest

from ucount import corpus, oracle
from ucount.errors import CycleNotInGraph, NoSemiPfaffianOrientation, NotCubic, OddCycle, TensionPresent
from ucount.oracle import f_constancy_check
from ucount.semipfaffian import (
    classify_in_out,
    find_semi_pfaffian,
    is_without_tension,
    tension,
    udet_cubic,
    verify_semi_pfaffian,
)

NO_TENSION = {k: v for k, v in corpus.cubic_corpus().items() if k != "K4"}


def test_outer_cycle_of_cube_has_all_in_vertices():
    g = corpus.cube()
    labels = classify_in_out(g, [0, 1, 2, 3])
    assert set(labels.values()) == {"in"}
    inner = classify_in_out(g, [4, 5, 6, 7])
    assert set(inner.values()) == {"out"}


def test_cube_has_no_tension():
    ok, rep = is_without_tension(corpus.cube())
    assert ok and rep is None


def test_k4_has_tension_two():
    ok, rep = is_without_tension(corpus.k4())
    assert not ok and rep.tension == 2


def test_k4_has_no_semi_pfaffian_orientation():
    with pytest.raises(NoSemiPfaffianOrientation):
        find_semi_pfaffian(corpus.k4())


def test_tension_errors():
    g = corpus.cube()
    with pytest.raises(OddCycle):
        tension(corpus.triangle_prism(), [0, 1, 2])
    with pytest.raises(CycleNotInGraph):
        tension(g, [0, 2, 4, 6])
    with pytest.raises(NotCubic):
        tension(corpus.wheel(4), [1, 2, 3, 4])


@pytest.mark.parametrize("name", sorted(NO_TENSION))
def test_udet_cubic_matches_oracle(name):
    g = NO_TENSION[name]
    assert udet_cubic(g) == oracle.udet(g)


def test_frozen_udet_values():
    assert udet_cubic(corpus.cube()) == -3
    assert udet_cubic(corpus.triangle_prism()) == -2
    assert udet_cubic(corpus.prism(5)) == 1
    assert udet_cubic(corpus.hexagonal_prism()) == 0
    assert udet_cubic(corpus.cube().with_weights({0: Fraction(-1, 2)})) == 0


@pytest.mark.parametrize("name", sorted(NO_TENSION))
def test_found_orientation_is_semi_pfaffian(name):
    og = find_semi_pfaffian(NO_TENSION[name])
    assert verify_semi_pfaffian(og)[0]
    kind, value = f_constancy_check(og)
    assert kind == "constant" and value in (-1, 1)


def test_tension_is_refused():
    with pytest.raises(TensionPresent):
        udet_cubic(corpus.k4())


def test_wrong_orientation_gives_witness():
    og = find_semi_pfaffian(corpus.cube())
    e = og.edges[0]
    bad = og.with_orientation({0: "vu" if e.dir == "uv" else "uv"})
    ok, witness = verify_semi_pfaffian(bad)
    assert not ok and 0 in witness.edges
