"""Semi-Pfaffian orientations, tension, and the cubic determinant algorithm.

An orientation of a cubic plane graph is semi-Pfaffian when every central
cycle of length ``2k`` is oddly oriented exactly when ``k`` is odd.  For a
graph without tension that has such an orientation,
``udet(G) = +-p * Pf(A_inv)`` where ``p`` is the product of the weights and
``A_inv`` inverts the non-zero entries of the skew adjacency matrix.  The
global sign is read off one cycle cover.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CycleNotInGraph,
    InputError,
    NoSemiPfaffianOrientation,
    NotCubic,
    NotSimple,
    OddCycle,
    SearchSpaceTooLarge,
    TensionPresent,
    ZeroWeightEdge,
)
from .fkt import _witness_matching, orient_by_face_parity, outer_face_index
from .graph import Multigraph, build_skew_adjacency, twin, validate_embedding, weight_product
from .oracle import Cycle, enumerate_central_cycles, forward_count
from .pfaffian import matching_sign, pfaffian

MAX_SEARCH_BITS = 22


@dataclass(frozen=True)
class TensionReport:
    cycle: Cycle
    classes: tuple[tuple[int, ...], tuple[int, ...]]
    out_counts: tuple[int, int]
    tension: int


def _require_cubic(g: Multigraph) -> None:
    if any(g.degree(v) != 3 for v in g.vertices()):
        raise NotCubic("graph must be cubic")
    if g.rotation is None:
        raise InputError("graph needs an embedding")


def _as_cycle(g: Multigraph, cycle) -> Cycle:
    """Accept a Cycle or a vertex sequence; check it is a simple cycle of ``g``."""
    if isinstance(cycle, Cycle):
        vs, es = list(cycle.vertices), list(cycle.edges)
    else:
        vs, es = list(cycle), []
        for i, v in enumerate(vs):
            x = vs[(i + 1) % len(vs)]
            cand = [eid for eid in g.incident(v) if g.edges[eid].other(v) == x and eid not in es]
            if not cand:
                raise CycleNotInGraph(f"no edge between {v} and {x}")
            es.append(cand[0])
    if len(vs) < 2 or len(set(vs)) != len(vs) or len(vs) != len(es):
        raise CycleNotInGraph("not a simple cycle")
    for i, eid in enumerate(es):
        e = g.edges[eid] if 0 <= eid < g.m else None
        if e is None or {e.u, e.v} != {vs[i], vs[(i + 1) % len(vs)]}:
            raise CycleNotInGraph(f"edge {eid} does not join consecutive cycle vertices")
    return Cycle(tuple(vs), tuple(es))


def classify_in_out(g: Multigraph, cycle) -> dict[int, str]:
    """``"in"`` when a cycle vertex's third edge lies on the bounded side.

    The side holding the outer face (declared, else the longest face) is
    the unbounded one.
    """
    _require_cubic(g)
    c = _as_cycle(g, cycle)
    faces = validate_embedding(g)
    face_of = {d: i for i, f in enumerate(faces) for d in f}
    outer = outer_face_index(g, faces)
    L = len(c.vertices)
    on_cycle = set(c.edges)
    # darts along the traversal, each with the left side's face
    along = []
    for i, eid in enumerate(c.edges):
        along.append((eid, 0) if g.edges[eid].u == c.vertices[i] else (eid, 1))
    left_faces = {face_of[d] for d in along}
    region = set(left_faces)
    stack = list(left_faces)
    while stack:
        f = stack.pop()
        for d in faces[f]:
            if d[0] in on_cycle:
                continue
            h = face_of[twin(d)]
            if h not in region:
                region.add(h)
                stack.append(h)
    left_is_outer = outer in region
    labels = {}
    for i, v in enumerate(c.vertices):
        out_d = along[i]
        back_d = twin(along[(i - 1) % L])
        ring = list(g.rotation[v])
        third = [d for d in ring if d not in (out_d, back_d)]
        if len(third) != 1:
            raise CycleNotInGraph("cycle vertex without a single third edge")
        j = ring.index(out_d)
        on_left = ring[(j + 1) % 3] == third[0]
        labels[v] = "out" if on_left == left_is_outer else "in"
    return labels


def tension(g: Multigraph, cycle) -> TensionReport:
    c = _as_cycle(g, cycle)
    if len(c.vertices) % 2:
        raise OddCycle("tension is defined for even cycles")
    labels = classify_in_out(g, c)
    v1 = tuple(c.vertices[0::2])
    v2 = tuple(c.vertices[1::2])
    o1 = sum(1 for v in v1 if labels[v] == "out")
    o2 = sum(1 for v in v2 if labels[v] == "out")
    i1, i2 = len(v1) - o1, len(v2) - o2
    assert abs(o1 - o2) == abs(i1 - i2)
    return TensionReport(c, (v1, v2), (o1, o2), abs(o1 - o2))


def is_without_tension(g: Multigraph) -> tuple[bool, TensionReport | None]:
    """Check every even central cycle; return the first one with tension."""
    _require_cubic(g)
    for c in enumerate_central_cycles(g):
        if c.length % 2 == 0:
            rep = tension(g, c)
            if rep.tension:
                return False, rep
    return True, None


def verify_semi_pfaffian(g: Multigraph) -> tuple[bool, Cycle | None]:
    """Every central ``2k``-cycle oddly oriented iff ``k`` is odd; else a witness."""
    _require_cubic(g)
    for c in enumerate_central_cycles(g):
        if c.length % 2:
            continue
        k = c.length // 2
        if forward_count(g, c) % 2 != k % 2:
            return False, c
    return True, None


def _spanning_tree(g: Multigraph) -> set[int]:
    seen, tree = set(), set()
    for s in g.vertices():
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        for v in queue:
            for eid in g.incident(v):
                x = g.edges[eid].other(v)
                if x not in seen:
                    seen.add(x)
                    tree.add(eid)
                    queue.append(x)
    return tree


def find_semi_pfaffian(g: Multigraph, max_bits: int = MAX_SEARCH_BITS) -> Multigraph:
    """A verified semi-Pfaffian orientation of a cubic plane graph.

    First the face-parity construction is tried (a face of length ``2k``
    gets ``k`` clockwise edges mod 2, with an odd face, if any, as the
    reference outer face).  Failing that, all orientations of the
    non-tree edges are searched; tree edges can be fixed because
    reversing every edge at one vertex preserves the property.
    """
    _require_cubic(g)
    if not g.is_simple():
        raise NotSimple("semi-Pfaffian search needs a simple graph")
    faces = validate_embedding(g)
    odd = [i for i, f in enumerate(faces) if len(f) % 2]
    outers = odd[:1] + [outer_face_index(g, faces)] if odd else [outer_face_index(g, faces)]
    if g.is_connected():
        for outer in dict.fromkeys(outers):
            for odd_round in (1, 0):
                def target(i):
                    n = len(faces[i])
                    return (n // 2) % 2 if n % 2 == 0 else ((n + odd_round) // 2) % 2

                og = g.with_orientation(orient_by_face_parity(g, faces, outer, target))
                if verify_semi_pfaffian(og)[0]:
                    return og
    tree = sorted(_spanning_tree(g))
    rest = [e.id for e in g.edges if e.id not in set(tree)]
    if len(rest) > max_bits:
        raise SearchSpaceTooLarge(f"{len(rest)} free edges exceed the search bound {max_bits}")
    base = {eid: "uv" for eid in tree}
    for bits in itertools.product(("uv", "vu"), repeat=len(rest)):
        og = g.with_orientation({**base, **dict(zip(rest, bits))})
        if verify_semi_pfaffian(og)[0]:
            return og
    raise NoSemiPfaffianOrientation("no semi-Pfaffian orientation exists")


def udet_cubic(g: Multigraph, orientation: Multigraph | None = None, check_tension: bool = True) -> Fraction:
    """``udet`` of a cubic plane graph without tension via one Pfaffian.

    The result is ``f * p * Pf(A_inv)`` with ``f = (-1)^|c| sgn(E - c)`` read
    off one cycle cover ``c`` (the complement of a perfect matching).
    """
    _require_cubic(g)
    if not g.is_simple():
        raise NotSimple("udet_cubic needs a simple graph")
    if any(e.w == 0 for e in g.edges):
        raise ZeroWeightEdge("weights must be non-zero")
    if check_tension:
        ok, rep = is_without_tension(g)
        if not ok:
            raise TensionPresent(f"cycle {rep.cycle.vertices} has tension {rep.tension}")
    og = orientation if orientation is not None else find_semi_pfaffian(g)
    if not og.is_oriented():
        raise InputError("orientation must orient every edge")
    witness = _witness_matching(og)
    if witness is None:
        return Fraction(0)
    cover = set(range(og.m)) - set(witness)
    f = (-1) ** _cycle_count(og, cover) * matching_sign([(og.edges[e].tail, og.edges[e].head) for e in witness])
    a_inv = build_skew_adjacency(og).inverted_entries()
    return f * weight_product(og) * pfaffian(a_inv)


def _cycle_count(g: Multigraph, eids) -> int:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.n
    for eid in eids:
        a, b = find(g.edges[eid].u), find(g.edges[eid].v)
        if a != b:
            parent[a] = b
            comps -= 1
    return comps
