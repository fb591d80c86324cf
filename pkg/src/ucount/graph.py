"""Weighted undirected multigraphs, rotation systems and skew adjacency matrices.

Vertices are the integers ``0..n-1`` and edges carry dense ids ``0..m-1``.
An edge end (a *dart*) is the pair ``(edge_id, k)`` with ``k = 0`` for the end
at ``edge.u`` and ``k = 1`` for the end at ``edge.v``.  A loop therefore
contributes two darts to its vertex.

A rotation system lists, for every vertex, its darts in counter-clockwise
order.  Faces are traced with the face kept on the left of every dart, so in
a drawing the bounded faces come out counter-clockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    IncompleteRotation,
    InputError,
    LoopPresent,
    MultiEdgePresent,
    NotPlanarEmbedding,
    NotSkewSymmetric,
    UnknownEdgeId,
    UnorientedEdge,
)

Dart = tuple  # (edge id, end)


def to_rational(x) -> Fraction:
    """Parse ``x`` (int, Fraction or string such as ``"-1/2"``) exactly."""
    if isinstance(x, float):
        raise InputError(f"refusing float weight {x!r}; use an exact string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"bad rational {x!r}") from exc


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def twin(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    w: Fraction = Fraction(1)
    dir: str | None = None  # "uv", "vu" or None

    def end(self, k: int) -> int:
        return self.u if k == 0 else self.v

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def tail(self) -> int:
        if self.dir == "uv":
            return self.u
        if self.dir == "vu":
            return self.v
        raise UnorientedEdge(f"edge {self.id} has no orientation")

    @property
    def head(self) -> int:
        return self.other(self.tail) if not self.is_loop else self.u


class RotationSystem:
    """Per-vertex counter-clockwise cyclic order of darts."""

    __slots__ = ("_order", "_pos")

    def __init__(self, order: Mapping[int, Sequence[Dart]]):
        self._order = {int(v): tuple(tuple(d) for d in ds) for v, ds in order.items()}
        self._pos = {}
        for v, ds in self._order.items():
            for i, d in enumerate(ds):
                self._pos[d] = (v, i)

    def __getitem__(self, v: int) -> tuple:
        return self._order.get(v, ())

    def __contains__(self, v: int) -> bool:
        return v in self._order

    def items(self):
        return self._order.items()

    def position(self, d: Dart) -> tuple[int, int]:
        return self._pos[d]

    def next_in_face(self, d: Dart) -> Dart:
        """The dart following ``d`` along the face on the left of ``d``."""
        v, i = self._pos[twin(d)]
        ring = self._order[v]
        return ring[(i - 1) % len(ring)]

    def __eq__(self, other) -> bool:
        return isinstance(other, RotationSystem) and self._order == other._order

    def __repr__(self) -> str:
        return f"RotationSystem({self._order!r})"


class Multigraph:
    """Immutable weighted multigraph with optional orientation and embedding.

    ``outer`` optionally names a dart lying on the declared outer face.
    """

    __slots__ = ("n", "edges", "rotation", "outer", "_inc")

    def __init__(self, n: int, edges: Iterable[Edge] = (), rotation=None, outer: Dart | None = None):
        self.n = int(n)
        es = []
        for i, e in enumerate(edges):
            if e.id != i:
                raise InputError(f"edge ids must be dense: expected {i}, got {e.id}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InputError(f"edge {e.id} references a missing vertex")
            if e.dir not in (None, "uv", "vu"):
                raise InputError(f"edge {e.id}: bad orientation {e.dir!r}")
            w = e.w if isinstance(e.w, Fraction) else to_rational(e.w)
            es.append(e if w is e.w else replace(e, w=w))
        self.edges: tuple[Edge, ...] = tuple(es)
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            inc[e.u].append(e.id)
            inc[e.v].append(e.id)
        self._inc = tuple(tuple(x) for x in inc)
        if rotation is not None and not isinstance(rotation, RotationSystem):
            rotation = RotationSystem(rotation)
        self.rotation: RotationSystem | None = rotation
        self.outer = tuple(outer) if outer is not None else None

    # construction helpers
    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable, weights: Sequence | None = None, rotation=None) -> "Multigraph":
        pairs = list(pairs)
        ws = [Fraction(1)] * len(pairs) if weights is None else [to_rational(x) for x in weights]
        return cls(n, [Edge(i, int(a), int(b), w) for i, ((a, b), w) in enumerate(zip(pairs, ws))], rotation)

    def replace(self, **kw) -> "Multigraph":
        args = dict(n=self.n, edges=self.edges, rotation=self.rotation, outer=self.outer)
        args.update(kw)
        return Multigraph(**args)

    # structure
    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def incident(self, v: int) -> tuple[int, ...]:
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._inc]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def darts_at(self, v: int) -> list[Dart]:
        out = []
        for eid in dict.fromkeys(self._inc[v]):
            e = self.edges[eid]
            if e.u == v:
                out.append((eid, 0))
            if e.v == v:
                out.append((eid, 1))
        return out

    def tail_of(self, d: Dart) -> int:
        return self.edges[d[0]].end(d[1])

    def head_of(self, d: Dart) -> int:
        return self.edges[d[0]].end(1 - d[1])

    def has_loops(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def has_multi_edges(self) -> bool:
        seen = set()
        for e in self.edges:
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                return True
            seen.add(key)
        return False

    def is_simple(self) -> bool:
        return not self.has_loops() and not self.has_multi_edges()

    def is_oriented(self) -> bool:
        return all(e.dir is not None for e in self.edges)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for eid in self._inc[x]:
                    y = self.edges[eid].other(x)
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # transformations
    def with_orientation(self, dirs: Mapping[int, str] | Sequence[str]) -> "Multigraph":
        if isinstance(dirs, Mapping):
            es = [replace(e, dir=dirs.get(e.id, e.dir)) for e in self.edges]
        else:
            es = [replace(e, dir=d) for e, d in zip(self.edges, dirs)]
        return self.replace(edges=es)

    def with_weights(self, weights: Mapping[int, object]) -> "Multigraph":
        es = [replace(e, w=to_rational(weights[e.id])) if e.id in weights else e for e in self.edges]
        return self.replace(edges=es)

    def unoriented(self) -> "Multigraph":
        return self.replace(edges=[replace(e, dir=None) for e in self.edges])

    def induced(self, keep: Iterable[int]) -> tuple["Multigraph", list[int], list[int]]:
        """Induced subgraph on ``keep`` with inherited embedding.

        Returns the subgraph plus the old ids of its vertices and edges.
        """
        keep = sorted(set(keep))
        vmap = {v: i for i, v in enumerate(keep)}
        old_e = [e.id for e in self.edges if e.u in vmap and e.v in vmap]
        emap = {old: i for i, old in enumerate(old_e)}
        es = []
        for old in old_e:
            e = self.edges[old]
            es.append(Edge(emap[old], vmap[e.u], vmap[e.v], e.w, e.dir))
        rot = None
        if self.rotation is not None:
            rot = {vmap[v]: [(emap[d[0]], d[1]) for d in self.rotation[v] if d[0] in emap] for v in keep}
        outer = None
        if self.outer is not None and self.outer[0] in emap:
            outer = (emap[self.outer[0]], self.outer[1])
        return Multigraph(len(keep), es, rot, outer), keep, old_e

    def relabeled(self, perm: Sequence[int]) -> "Multigraph":
        """Vertex ``v`` becomes ``perm[v]``; the embedding is transported."""
        es = [Edge(e.id, perm[e.u], perm[e.v], e.w, e.dir) for e in self.edges]
        rot = None
        if self.rotation is not None:
            rot = {perm[v]: ds for v, ds in self.rotation.items()}
        return Multigraph(self.n, es, rot, self.outer)

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


def weight_product(g: Multigraph) -> Fraction:
    p = Fraction(1)
    for e in g.edges:
        p *= e.w
    return p


def edge_complement(g: Multigraph, subset: Iterable[int]) -> frozenset[int]:
    subset = set(subset)
    bad = [x for x in subset if not (isinstance(x, int) and 0 <= x < g.m)]
    if bad:
        raise UnknownEdgeId(f"unknown edge ids {sorted(bad)}")
    return frozenset(range(g.m)) - subset


def check_rotation(g: Multigraph, rot: RotationSystem) -> None:
    for v in g.vertices():
        want = sorted(g.darts_at(v))
        have = sorted(rot[v])
        if want != have:
            raise IncompleteRotation(f"rotation at vertex {v} is {have}, expected darts {want}")
    extra = [v for v, _ in rot.items() if not (0 <= v < g.n)]
    if extra:
        raise IncompleteRotation(f"rotation mentions unknown vertices {extra}")


def trace_faces(g: Multigraph, rot: RotationSystem) -> list[tuple[Dart, ...]]:
    """Face boundary walks, in order of the first dart (by edge id) on each."""
    faces = []
    seen = set()
    for e in g.edges:
        for k in (0, 1):
            start = (e.id, k)
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = rot.next_in_face(d)
            faces.append(tuple(walk))
    return faces


def validate_embedding(g: Multigraph, rot: RotationSystem | None = None) -> list[tuple[Dart, ...]]:
    """Check that ``rot`` is a planar rotation system of ``g``; return its faces.

    Each connected component must satisfy ``V - E + F = 2`` on the sphere,
    which is the same as ``V - E + F = 1 + C`` for the plane drawing.
    """
    rot = rot if rot is not None else g.rotation
    if rot is None:
        raise IncompleteRotation("graph carries no rotation system")
    check_rotation(g, rot)
    faces = trace_faces(g, rot)
    comp_of = {}
    comps = g.components()
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    nf = [0] * len(comps)
    for f in faces:
        nf[comp_of[g.tail_of(f[0])]] += 1
    for i, comp in enumerate(comps):
        ne = sum(1 for e in g.edges if comp_of[e.u] == i)
        f = nf[i] if ne else 1
        if len(comp) - ne + f != 2:
            raise NotPlanarEmbedding(
                f"component containing vertex {comp[0]}: V-E+F = {len(comp) - ne + f}, expected 2"
            )
    return faces


def face_index_of(faces: Sequence[tuple], d: Dart) -> int:
    for i, f in enumerate(faces):
        if d in f:
            return i
    raise UnknownEdgeId(f"dart {d} lies on no face")


def rotation_from_directions(g: Multigraph, angle: Mapping[Dart, float]) -> RotationSystem:
    """Sort the darts at each vertex by the given departure angle (radians)."""
    order = {}
    for v in g.vertices():
        ds = g.darts_at(v)
        order[v] = sorted(ds, key=lambda d: angle[d] % (2 * math.pi))
    return RotationSystem(order)


def rotation_from_coordinates(g: Multigraph, pos: Mapping[int, tuple], hints: Mapping[Dart, float] | None = None) -> RotationSystem:
    """Straight-line rotation from vertex positions; ``hints`` give degrees for curved edges."""
    hints = hints or {}
    angle = {}
    for e in g.edges:
        for k in (0, 1):
            d = (e.id, k)
            if d in hints:
                angle[d] = math.radians(hints[d])
            else:
                a, b = pos[e.end(k)], pos[e.end(1 - k)]
                angle[d] = math.atan2(b[1] - a[1], b[0] - a[0])
    return rotation_from_directions(g, angle)


class SkewMatrix:
    """Exact skew-symmetric matrix; rows and columns are 0-based."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(to_rational(x) for x in r) for r in rows)
        self.n = len(self.rows)
        for i, r in enumerate(self.rows):
            if len(r) != self.n:
                raise NotSkewSymmetric("matrix is not square")
            if r[i] != 0:
                raise NotSkewSymmetric(f"nonzero diagonal entry at {i}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise NotSkewSymmetric(f"a[{i}][{j}] != -a[{j}][{i}]")

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def inverted_entries(self) -> "SkewMatrix":
        return SkewMatrix([[1 / x if x else Fraction(0) for x in r] for r in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SkewMatrix({[[str(x) for x in r] for r in self.rows]})"


def build_skew_adjacency(g: Multigraph) -> SkewMatrix:
    if g.has_loops():
        raise LoopPresent("skew adjacency needs a loopless graph")
    if g.has_multi_edges():
        raise MultiEdgePresent("skew adjacency needs a graph without parallel edges")
    a = [[Fraction(0)] * g.n for _ in range(g.n)]
    for e in g.edges:
        i, j = e.tail, e.head
        a[i][j] = e.w
        a[j][i] = -e.w
    return SkewMatrix(a)


# serialization

def dart_ref(d: Dart) -> str:
    return f"{d[0]}{'uv'[d[1]]}"


def parse_dart_ref(s: str) -> Dart:
    s = str(s)
    if len(s) < 2 or s[-1] not in "uv" or not s[:-1].isdigit():
        raise InputError(f"bad edge-end reference {s!r}")
    return (int(s[:-1]), "uv".index(s[-1]))


def graph_to_json(g: Multigraph) -> dict:
    out = {
        "vertices": list(g.vertices()),
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "w": rational_str(e.w), "dir": e.dir} for e in g.edges
        ],
    }
    if g.rotation is not None:
        out["rotation"] = {str(v): [dart_ref(d) for d in g.rotation[v]] for v in g.vertices()}
    if g.outer is not None:
        out["outer"] = dart_ref(g.outer)
    return out


def graph_from_json(data: Mapping) -> Multigraph:
    try:
        vs = list(data["vertices"])
        if vs != list(range(len(vs))):
            raise InputError("vertex ids must be 0..n-1 in order")
        es = []
        for item in data["edges"]:
            es.append(Edge(int(item["id"]), int(item["u"]), int(item["v"]), to_rational(item.get("w", "1")), item.get("dir")))
        es.sort(key=lambda e: e.id)
        rot = None
        if data.get("rotation") is not None:
            rot = {int(v): [parse_dart_ref(r) for r in refs] for v, refs in data["rotation"].items()}
            for v in range(len(vs)):
                rot.setdefault(v, [])
        outer = data.get("outer")
        outer = parse_dart_ref(outer) if outer is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return Multigraph(len(vs), es, rot, outer)


def iter_subsets(items: Sequence) -> Iterator[tuple]:
    for mask in range(1 << len(items)):
        yield tuple(x for i, x in enumerate(items) if mask >> i & 1)
