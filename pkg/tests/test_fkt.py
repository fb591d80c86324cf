from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ucount import corpus, oracle
from ucount.errors import DegreeTooHigh, NotConnected, NotSimple, OrientationNotVerifiedPfaffian
from ucount.fkt import (
    clockwise_count,
    inverse_degree3_part,
    perfmatch_planar,
    perfmatch_via_pfaffian,
    pfaffian_orientation,
    signed_pfaffian,
    uperm_degree3,
    verify_pfaffian,
)
from ucount.graph import Multigraph, validate_embedding


def test_k4_values():
    g = corpus.k4()
    assert uperm_degree3(g) == 3
    assert perfmatch_planar(g) == 3


def test_cube_values():
    assert uperm_degree3(corpus.cube()) == 9
    assert perfmatch_planar(corpus.cube()) == 9


def test_every_bounded_face_has_odd_clockwise_count():
    og = pfaffian_orientation(corpus.hexagonal_prism())
    outer = next(i for i, f in enumerate(og.faces) if og.graph.outer in f)
    for i, f in enumerate(og.faces):
        if i != outer:
            assert clockwise_count(og.graph, f) % 2 == 1


@pytest.mark.parametrize("name, g", sorted(corpus.fkt_corpus(8).items()))
def test_orientation_is_pfaffian(name, g):
    if not g.is_connected():
        pytest.skip("disconnected")
    og = pfaffian_orientation(g)
    assert verify_pfaffian(og.graph) is None


@pytest.mark.parametrize("name, g", sorted(corpus.fkt_corpus(12).items()))
def test_uperm_degree3_matches_oracle(name, g):
    assert uperm_degree3(g) == oracle.uperm(g)


@given(st.integers(0, 10**5))
def test_perfmatch_planar_matches_oracle(seed):
    g = corpus.random_subcubic_planar(4 + seed % 10, seed)
    assert perfmatch_planar(g) == oracle.perfmatch(g)


def test_bad_orientation_detected_in_strict_mode():
    og = pfaffian_orientation(corpus.cube())
    e = og.graph.edges[0]
    flipped = og.graph.with_orientation({e.id: "vu" if e.dir == "uv" else "uv"})
    bad = type(og)(flipped, og.embedding, og.faces)
    assert verify_pfaffian(flipped) is not None
    with pytest.raises(OrientationNotVerifiedPfaffian):
        perfmatch_via_pfaffian(bad, strict=True)


def test_signed_pfaffian_edge_cases():
    assert signed_pfaffian(Multigraph(0)) == 1
    assert signed_pfaffian(corpus.cycle(3).with_orientation(["uv"] * 3)) == 0


def test_inverse_degree3_part():
    g = corpus.wheel(4).with_weights({0: Fraction(2)})
    h = inverse_degree3_part(g)
    assert h.n == 4  # the rim
    assert Fraction(1, 2) not in {e.w for e in h.edges}  # hub edges dropped


def test_preconditions():
    with pytest.raises(DegreeTooHigh):
        uperm_degree3(corpus.wheel(4))
    with pytest.raises(NotConnected):
        pfaffian_orientation(Multigraph.from_pairs(4, [(0, 1), (2, 3)], rotation={0: [(0, 0)], 1: [(0, 1)], 2: [(1, 0)], 3: [(1, 1)]}))
    digon = Multigraph.from_pairs(2, [(0, 1), (0, 1)], rotation={0: [(0, 0), (1, 0)], 1: [(1, 1), (0, 1)]})
    validate_embedding(digon)
    with pytest.raises(NotSimple):
        pfaffian_orientation(digon)


def test_degree_below_two_gives_zero():
    path = Multigraph.from_pairs(3, [(0, 1), (1, 2)], rotation={0: [(0, 0)], 1: [(0, 1), (1, 0)], 2: [(1, 1)]})
    assert uperm_degree3(path) == 0


@pytest.mark.parametrize("k", [10, 15, 25])
def test_uperm_degree3_matches_frontier_on_large_prisms(k):
    g = corpus.prism(k)
    assert uperm_degree3(g) == oracle.uperm(g, method="frontier")
