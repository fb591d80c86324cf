"""Pfaffian orientations of plane graphs and the polynomial permanent for degree 3.

For a plane graph, orienting a spanning tree arbitrarily and then fixing the
remaining edges face by face (leaves of the dual tree first) so that every
bounded face has an odd number of clockwise edges gives a Pfaffian
orientation.  The Pfaffian of the skew adjacency matrix then counts perfect
matchings up to one global sign.

For planar graphs of maximum degree 3 the complement of a cycle cover is a
perfect matching of the degree-3 vertices, which gives
``uperm(G) = p * PerfMatch(G_inv)`` with ``p`` the product of all weights and
``G_inv`` the degree-3 part with inverted weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .errors import (
    DegreeTooHigh,
    InputError,
    NotConnected,
    NotSimple,
    OrientationNotVerifiedPfaffian,
    ZeroWeightEdge,
)
from .graph import Multigraph, RotationSystem, build_skew_adjacency, face_index_of, validate_embedding, weight_product
from .oracle import enumerate_central_cycles, is_oddly_oriented
from .pfaffian import matching_sign, pfaffian


@dataclass(frozen=True)
class OrientedPlanarGraph:
    graph: Multigraph
    embedding: RotationSystem
    faces: tuple

    def __post_init__(self):
        if not self.graph.is_oriented():
            raise InputError("every edge needs an orientation")


def _embedded(g: Multigraph, rot: RotationSystem | None) -> Multigraph:
    if rot is not None:
        g = g.replace(rotation=rot)
    return g


def clockwise_count(g: Multigraph, face) -> int:
    """Edges of a face walk oriented against the walk.

    Faces are traced with the face on the left, so bounded faces run
    counter-clockwise and an edge against the walk is a clockwise edge.
    """
    return sum(1 for d in face if g.edges[d[0]].dir != ("uv" if d[1] == 0 else "vu"))


def outer_face_index(g: Multigraph, faces) -> int:
    """The declared outer face, else the longest face (first on ties)."""
    if g.outer is not None:
        return face_index_of(faces, g.outer)
    return max(range(len(faces)), key=lambda i: (len(faces[i]), -i))


def orient_by_face_parity(g: Multigraph, faces, outer: int, target) -> dict[int, str]:
    """Orientation with ``clockwise_count(face) % 2 == target(face)`` on every bounded face.

    Tree edges point away from vertex 0's BFS root; every other edge is
    fixed when it is the last free edge of a face, peeling the dual tree
    from its leaves towards ``outer``.
    """
    dirs: dict[int, str] = {}
    seen = {0}
    queue = [0]
    for v in queue:
        for eid in g.incident(v):
            e = g.edges[eid]
            x = e.other(v)
            if x not in seen:
                seen.add(x)
                queue.append(x)
                dirs[eid] = "uv" if e.u == v else "vu"
    face_edges = [set(d[0] for d in f) for f in faces]
    free = [set(fe) - set(dirs) for fe in face_edges]
    stack = [i for i in range(len(faces)) if i != outer and len(free[i]) == 1]
    while stack:
        i = stack.pop()
        if len(free[i]) != 1:
            continue
        (eid,) = free[i]
        face = faces[i]
        k = next(d[1] for d in face if d[0] == eid)
        dirs[eid] = "uv" if k == 0 else "vu"  # along the walk
        cur = sum(1 for d in face if dirs[d[0]] != ("uv" if d[1] == 0 else "vu"))
        if cur % 2 != target(i) % 2:
            dirs[eid] = "vu" if dirs[eid] == "uv" else "uv"
        for j, fe in enumerate(face_edges):
            if eid in free[j]:
                free[j].discard(eid)
                if j != outer and len(free[j]) == 1:
                    stack.append(j)
    if len(dirs) != g.m:
        raise InputError("face peeling left edges unoriented")
    return dirs


def pfaffian_orientation(g: Multigraph, rot: RotationSystem | None = None) -> OrientedPlanarGraph:
    """Orientation with an odd number of clockwise edges on every bounded face."""
    g = _embedded(g, rot)
    if not g.is_connected():
        raise NotConnected("Pfaffian orientation needs a connected graph")
    if not g.is_simple():
        raise NotSimple("Pfaffian orientation needs a simple graph")
    faces = validate_embedding(g)
    if g.m == 0:
        return OrientedPlanarGraph(g, g.rotation, tuple(faces))
    outer = outer_face_index(g, faces)
    dirs = orient_by_face_parity(g, faces, outer, lambda i: 1)
    og = g.with_orientation(dirs)
    return OrientedPlanarGraph(og, og.rotation, tuple(faces))


def verify_pfaffian(g: Multigraph):
    """First even central cycle that is not oddly oriented, or ``None``."""
    for c in enumerate_central_cycles(g):
        if c.length % 2 == 0 and not is_oddly_oriented(g, c):
            return c
    return None


def _witness_matching(g: Multigraph):
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from((e.u, e.v, {"id": e.id}) for e in g.edges)
    m = nx.max_weight_matching(h, maxcardinality=True)
    if 2 * len(m) != g.n:
        return None
    return [h.edges[u, v]["id"] for u, v in m]


def signed_pfaffian(g: Multigraph) -> Fraction:
    """Pfaffian of the oriented graph, rescaled by the sign of one perfect matching.

    This is the matching count when the orientation is Pfaffian: all terms
    then share the sign of the witness.
    """
    if g.n % 2:
        return Fraction(0)
    if g.n == 0:
        return Fraction(1)
    witness = _witness_matching(g)
    if witness is None:
        return Fraction(0)
    sign = matching_sign([(g.edges[e].tail, g.edges[e].head) for e in witness])
    return sign * pfaffian(build_skew_adjacency(g))


def perfmatch_via_pfaffian(og: OrientedPlanarGraph, strict: bool = False) -> Fraction:
    """Weighted perfect matching count of a Pfaffian-oriented graph."""
    if strict:
        bad = verify_pfaffian(og.graph)
        if bad is not None:
            raise OrientationNotVerifiedPfaffian(f"cycle {bad.vertices} is not oddly oriented")
    return signed_pfaffian(og.graph)


def perfmatch_planar(g: Multigraph, strict: bool = False) -> Fraction:
    """PerfMatch of an embedded simple planar graph, multiplied over components."""
    total = Fraction(1)
    for comp in g.components():
        sub, _, _ = g.induced(comp)
        if len(comp) % 2:
            return Fraction(0)
        total *= perfmatch_via_pfaffian(pfaffian_orientation(sub), strict)
        if total == 0:
            return total
    return total


def inverse_degree3_part(g: Multigraph) -> Multigraph:
    """Subgraph on the degree-3 vertices with every weight inverted."""
    keep = [v for v in g.vertices() if g.degree(v) == 3]
    sub, _, _ = g.induced(keep)
    return sub.with_weights({e.id: 1 / e.w for e in sub.edges}) if sub.m else sub


def uperm_degree3(g: Multigraph, rot: RotationSystem | None = None, strict: bool = False) -> Fraction:
    """``uperm`` of an embedded planar graph of maximum degree 3 in polynomial time."""
    g = _embedded(g, rot)
    if g.rotation is None:
        raise InputError("uperm_degree3 needs an embedding")
    validate_embedding(g)
    for v in g.vertices():
        if g.degree(v) > 3:
            raise DegreeTooHigh(f"vertex {v} has degree {g.degree(v)}")
    if any(e.w == 0 for e in g.edges):
        raise ZeroWeightEdge("weights must be non-zero")
    if any(g.degree(v) < 2 for v in g.vertices()):
        return Fraction(0)
    ginv = inverse_degree3_part(g)
    if not ginv.is_simple():
        raise NotSimple("the degree-3 part has loops or parallel edges")
    return weight_product(g) * perfmatch_planar(ginv, strict)
