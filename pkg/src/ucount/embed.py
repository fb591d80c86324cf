"""Mutable plane graphs for splicing gadgets into an embedding.

A :class:`PlaneBuilder` keeps edges and a counter-clockwise rotation at every
vertex.  A *corner* ``(h, x)`` names the gap at vertex ``h`` just before the
dart ``x`` in its rotation; a dart inserted there lands inside the face whose
walk passes through that gap.  All operations keep the rotation planar, and
:meth:`PlaneBuilder.freeze` re-checks that with the Euler test.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable

from .errors import InputError, NotPlanarEmbedding, RoutingNotPlanar
from .gadget import Gadget
from .graph import Edge, Multigraph, RotationSystem, twin, validate_embedding


class PlaneBuilder:
    def __init__(self):
        self.ends: dict[int, list[int]] = {}
        self.weight: dict[int, Fraction] = {}
        self.tag: dict[int, object] = {}
        self.rot: dict[int, list] = {}
        self.info: dict[int, str] = {}
        self._nv = 0
        self._ne = 0

    # construction

    @classmethod
    def from_graph(cls, g: Multigraph, info: str = "host", tag: object = "host") -> "PlaneBuilder":
        if g.rotation is None:
            raise InputError("graph needs a rotation system")
        validate_embedding(g)
        b = cls()
        for v in g.vertices():
            b.add_vertex(f"{info}.{v}")
        for e in g.edges:
            b.add_edge(e.u, e.v, e.w, tag if not callable(tag) else tag(e.id))
        for v in g.vertices():
            b.rot[v] = list(g.rotation[v])
        return b

    def add_vertex(self, info: str) -> int:
        v = self._nv
        self._nv += 1
        self.rot[v] = []
        self.info[v] = info
        return v

    def add_edge(self, u: int, v: int, w=1, tag=None) -> int:
        """Add an edge without touching the rotation."""
        e = self._ne
        self._ne += 1
        self.ends[e] = [u, v]
        self.weight[e] = Fraction(w)
        self.tag[e] = tag
        return e

    def add_gadget(self, gad: Gadget, prefix: str, tag_of=None) -> tuple[dict, dict]:
        """Copy a stub-free gadget in as a new component."""
        if gad.external:
            raise InputError("only stub-free gadgets can be added as components")
        return self._copy_gadget(gad, prefix, tag_of)

    def _copy_gadget(self, gad: Gadget, prefix: str, tag_of=None) -> tuple[dict, dict]:
        if gad.stub_rotation is None:
            raise NotPlanarEmbedding(f"{gad.name}: no embedding recorded")
        labels = gad.labels or tuple(f"v{i}" for i in gad.graph.vertices())
        vmap = {v: self.add_vertex(f"{prefix}.{labels[v]}") for v in gad.graph.vertices()}
        emap = {}
        for e in gad.graph.edges:
            emap[e.id] = self.add_edge(vmap[e.u], vmap[e.v], e.w, tag_of(e.id) if tag_of else (prefix, e.id))
        for v in gad.graph.vertices():
            self.rot[vmap[v]] = [x if isinstance(x, str) else (emap[x[0]], x[1]) for x in gad.stub_rotation.get(v, ())]
        return vmap, emap

    # queries

    def tail(self, d) -> int:
        return self.ends[d[0]][d[1]]

    def head(self, d) -> int:
        return self.ends[d[0]][1 - d[1]]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def next_in_face(self, d):
        ring = self.rot[self.head(d)]
        return ring[(ring.index(twin(d)) - 1) % len(ring)]

    def faces(self) -> tuple[list[list], dict]:
        """Face walks and the face index of every dart."""
        walks, face_of = [], {}
        for e in sorted(self.ends):
            for k in (0, 1):
                d = (e, k)
                if d in face_of:
                    continue
                walk = []
                while d not in face_of:
                    face_of[d] = len(walks)
                    walk.append(d)
                    d = self.next_in_face(d)
                walks.append(walk)
        return walks, face_of

    def edges_with(self, pred) -> list[int]:
        return [e for e in sorted(self.ends) if pred(self.tag[e])]

    # local surgery

    def subdivide(self, eid: int, info: str) -> tuple[int, int]:
        """Split edge ``eid`` at a new vertex; returns (vertex, new edge).

        ``eid`` keeps its first end and weight, the new edge (weight 1) takes
        the second end and inherits the tag.
        """
        u, v = self.ends[eid]
        x = self.add_vertex(info)
        e2 = self.add_edge(x, v, 1, self.tag[eid])
        self.ends[eid][1] = x
        ring = self.rot[v]
        ring[ring.index((eid, 1))] = (e2, 1)
        self.rot[x] = [(eid, 1), (e2, 0)]
        return x, e2

    @staticmethod
    def corner_after_subdivide(d, e2: int):
        """Corner at the new vertex on the face left of dart ``d`` of the split edge."""
        return (d[0], 1) if d[1] == 0 else (e2, 0)

    def insert_edge(self, ca, cb, w=1, tag=None) -> int:
        """New edge from corner ``ca`` to corner ``cb`` (both on one face)."""
        (a, xa), (b, xb) = ca, cb
        e = self.add_edge(a, b, w, tag)
        ring = self.rot[a]
        ring.insert(ring.index(xa), (e, 0))
        ring = self.rot[b]
        ring.insert(ring.index(xb), (e, 1))
        return e

    def insert_strands(self, ca, cb, tag=None) -> tuple[int, int]:
        """Two parallel edges between the corners; returns (right, left) strand."""
        (a, xa), (b, xb) = ca, cb
        p = self.add_edge(a, b, 1, tag)
        q = self.add_edge(a, b, 1, tag)
        ring = self.rot[a]
        i = ring.index(xa)
        ring[i:i] = [(p, 0), (q, 0)]
        ring = self.rot[b]
        i = ring.index(xb)
        ring[i:i] = [(q, 1), (p, 1)]
        return p, q

    def remove_edge(self, eid: int) -> None:
        u, v = self.ends.pop(eid)
        self.rot[u].remove((eid, 0))
        self.rot[v].remove((eid, 1))
        del self.weight[eid], self.tag[eid]

    def drop_darts(self, v: int, darts: Iterable) -> None:
        """Detach darts from ``v``; their edges are expected to be removed next."""
        for d in darts:
            self.rot[v].remove(d)

    def split_vertex(self, x: int, groups: list[list]) -> list[int]:
        """Replace ``x`` by one vertex per group of cyclically consecutive darts."""
        ring = self.rot[x]
        if sorted(d for grp in groups for d in grp) != sorted(ring):
            raise InputError("split groups must partition the rotation")
        out = []
        for i, grp in enumerate(groups):
            y = self.add_vertex(f"{self.info[x]}/{i}")
            self.rot[y] = list(grp)
            for d in grp:
                self.ends[d[0]][d[1]] = y
            out.append(y)
        del self.rot[x], self.info[x]
        return out

    def contract(self, x: int) -> None:
        """Suppress a degree-two vertex, merging its two edges (weights multiply)."""
        ring = self.rot[x]
        if len(ring) != 2 or ring[0][0] == ring[1][0]:
            raise InputError(f"vertex {x} cannot be suppressed")
        (e, k), (f, l) = ring
        far = (f, 1 - l)
        b = self.tail(far)
        self.ends[e][k] = b
        rb = self.rot[b]
        rb[rb.index(far)] = (e, k)
        self.weight[e] *= self.weight[f]
        del self.ends[f], self.weight[f], self.tag[f]
        del self.rot[x], self.info[x]

    def ring_from(self, x: int, start) -> list:
        ring = self.rot[x]
        i = ring.index(start)
        return ring[i:] + ring[:i]

    def substitute(self, x: int, ring: list, gad: Gadget, prefix: str) -> dict:
        """Replace vertex ``x`` by ``gad``; ``ring[j]`` is attached to stub ``j``.

        ``ring`` must be the rotation at ``x`` read counter-clockwise, and the
        stub multipliers are folded into the weights of the ambient edges.
        """
        if len(ring) != len(gad.external) or sorted(ring) != sorted(self.rot[x]):
            raise InputError(f"{gad.name}: ring does not match the vertex rotation")
        if self.ring_from(x, ring[0]) != list(ring):
            raise InputError(f"{gad.name}: ring is not a rotation of the vertex order")
        vmap, _ = self._copy_gadget(gad, prefix, tag_of=lambda eid: (prefix, eid))
        by_name = dict(zip(gad.stub_names, ring))
        for s, d in zip(gad.external, ring):
            self.ends[d[0]][d[1]] = vmap[s.vertex]
            self.weight[d[0]] *= s.multiplier
        for v in vmap.values():
            self.rot[v] = [by_name[i] if isinstance(i, str) else i for i in self.rot[v]]
        del self.rot[x], self.info[x]
        return vmap

    # output

    def freeze(self) -> tuple[Multigraph, dict, dict]:
        """Compact ids and return (graph, new vertex -> info, new edge -> tag)."""
        vs = sorted(self.rot)
        vid = {v: i for i, v in enumerate(vs)}
        es = sorted(self.ends)
        eid = {e: i for i, e in enumerate(es)}
        edges = [Edge(eid[e], vid[self.ends[e][0]], vid[self.ends[e][1]], self.weight[e]) for e in es]
        rot = RotationSystem({vid[v]: [(eid[d[0]], d[1]) for d in self.rot[v]] for v in vs})
        g = Multigraph(len(vs), edges, rot)
        validate_embedding(g)
        return g, {vid[v]: self.info[v] for v in vs}, {eid[e]: self.tag[e] for e in es}


# routing through the dual graph

def route(b: PlaneBuilder, sources: list[int], targets: list[int], avoid: set[int]) -> tuple[int, list, int]:
    """Shortest face path from a side of a source edge to a side of a target edge.

    Returns ``(d1, crossings, d2)``: a dart of a source edge, the darts
    crossed in order (each seen from the face being left), and a dart of a
    target edge whose left face is the last face.  Edges in ``avoid`` and
    edges with the same face on both sides are never crossed.
    """
    walks, face_of = b.faces()
    start = {}
    for e in sources:
        for k in (0, 1):
            start.setdefault(face_of[(e, k)], (e, k))
    goal = {}
    for e in targets:
        for k in (0, 1):
            goal.setdefault(face_of[(e, k)], (e, k))
    parent: dict = {f: None for f in sorted(start)}
    queue = deque(sorted(start))
    while queue:
        f = queue.popleft()
        if f in goal:
            path = []
            g = f
            while parent[g] is not None:
                path.append(parent[g])
                g = face_of[parent[g]]
            path.reverse()
            return start[g], path, goal[f]
        for d in walks[f]:
            if d[0] in avoid:
                continue
            h = face_of[twin(d)]
            if h == f or h in parent:
                continue
            parent[h] = d
            queue.append(h)
    raise RoutingNotPlanar("no face path joins the two edges")


def check_route(b: PlaneBuilder, e1: int, crossed: list[int], e2: int) -> tuple[int, list, int]:
    """Turn an explicit crossing list into a dart path, or raise RoutingNotPlanar."""
    walks, face_of = b.faces()
    if e1 in crossed or e2 in crossed or len(set(crossed)) != len(crossed):
        raise RoutingNotPlanar("crossed edges must be distinct from each other and from e1, e2")
    for k1 in (0, 1):
        d1 = (e1, k1)
        f = face_of[d1]
        path = []
        for r in crossed:
            d = (r, 0) if face_of[(r, 0)] == f else (r, 1) if face_of[(r, 1)] == f else None
            if d is None or face_of[twin(d)] == f:
                break
            path.append(d)
            f = face_of[twin(d)]
        else:
            for k2 in (0, 1):
                if face_of[(e2, k2)] == f:
                    return d1, path, (e2, k2)
    raise RoutingNotPlanar("listed edges do not form a corridor from e1 to e2")
