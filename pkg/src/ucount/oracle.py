"""Brute-force ground truth by the defining sums.

Cycle covers are enumerated by a depth-first search over the vertices in id
order.  At each vertex the search picks the still undecided incident items
(edges to later vertices, loops, and for gadgets external stubs) that bring
the vertex to degree exactly two, and abandons a branch as soon as some later
vertex can no longer reach degree two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import MismatchedSupport, MissingBasePairing, InputError
from .gadget import Gadget
from .graph import Multigraph
from .pfaffian import matching_sign

PERM = "perm"
DET = "det"


@dataclass(frozen=True)
class CycleCover:
    edges: frozenset
    components: int
    weight: Fraction


@dataclass(frozen=True)
class Cycle:
    """Simple cycle; ``edges[i]`` joins ``vertices[i]`` and ``vertices[i + 1]``."""

    vertices: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class SignatureTable:
    flavor: str
    entries: Mapping  # frozenset of names -> Fraction, zero entries dropped
    base_pairing: tuple | None = None
    conventions: Mapping = None  # active stub set -> reference pairing used for it

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(frozenset(key), Fraction(0))

    def nonzero(self) -> dict:
        return {k: v for k, v in self.entries.items() if v != 0}

    def rows(self) -> list[tuple[tuple, Fraction]]:
        return sorted(((tuple(sorted(k)), v) for k, v in self.nonzero().items()), key=lambda r: (len(r[0]), r[0]))

    def __eq__(self, other) -> bool:
        if isinstance(other, SignatureTable):
            return self.flavor == other.flavor and self.nonzero() == other.nonzero()
        if isinstance(other, Mapping):
            want = {frozenset(k): Fraction(v) for k, v in other.items() if Fraction(v) != 0}
            return self.nonzero() == want
        return NotImplemented


def _search(n: int, ends: Sequence[tuple], per_vertex: int, order: Sequence[int] | None = None) -> Iterator[tuple]:
    """Choose items so every vertex meets exactly ``per_vertex`` item ends.

    ``ends[i]`` lists the vertices an item touches (a loop lists its vertex
    twice, a stub lists one vertex).  Vertices are visited in ``order``
    (default: by id) and each item is decided at its first visited vertex.
    Yields tuples of chosen item indices.
    """
    if order is not None:
        rank = {v: i for i, v in enumerate(order)}
        ends = [tuple(rank[x] for x in vs) for vs in ends]
    owned = [[] for _ in range(n)]
    remaining = [0] * n
    for i, vs in enumerate(ends):
        owned[min(vs)].append(i)
        for x in vs:
            remaining[x] += 1
    # per vertex: the later vertices its owned items touch, and the admissible
    # item combinations grouped by how much degree they give the vertex itself
    later = []
    combos = []
    for v in range(n):
        items = owned[v]
        later.append(sorted({x for i in items for x in ends[i] if x != v}))
        by_gain: dict = {}
        for r in range(len(items) + 1):
            for combo in itertools.combinations(items, r):
                gain = sum(ends[i].count(v) for i in combo)
                if gain <= per_vertex:
                    hits = [x for i in combo for x in ends[i] if x != v]
                    by_gain.setdefault(gain, []).append((combo, hits))
        combos.append(by_gain)
    deg = [0] * n
    chosen: list[int] = []

    def rec(v: int):
        if v == n:
            yield tuple(chosen)
            return
        options = combos[v].get(per_vertex - deg[v])
        if not options:
            return
        for i in owned[v]:
            for x in ends[i]:
                if x != v:
                    remaining[x] -= 1
        watch = later[v]
        for combo, hits in options:
            for x in hits:
                deg[x] += 1
            if all(per_vertex >= deg[x] and deg[x] + remaining[x] >= per_vertex for x in watch):
                chosen.extend(combo)
                yield from rec(v + 1)
                del chosen[len(chosen) - len(combo):]
            for x in hits:
                deg[x] -= 1
        for i in owned[v]:
            for x in ends[i]:
                if x != v:
                    remaining[x] += 1

    yield from rec(0)


def _visit_order(g: Multigraph) -> list[int]:
    """Breadth-first visiting order; keeps the undecided boundary small."""
    seen, order = set(), []
    for s in g.vertices():
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        for v in queue:
            order.append(v)
            for e in g.incident(v):
                x = g.edges[e].other(v)
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
    return order


def _count_cycles(g: Multigraph, eids: Iterable[int]) -> int:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    verts = set()
    for e in eids:
        a, b = g.edges[e].u, g.edges[e].v
        verts.add(a)
        verts.add(b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in verts})


def enumerate_cycle_covers(g: Multigraph) -> Iterator[CycleCover]:
    ends = [(e.u, e.v) for e in g.edges]
    for pick in _search(g.n, ends, 2):
        w = Fraction(1)
        for e in pick:
            w *= g.edges[e].w
        yield CycleCover(frozenset(pick), _count_cycles(g, pick), w)


def _sum_covers(g: Multigraph, signed: bool) -> Fraction:
    total = Fraction(0)
    for c in enumerate_cycle_covers(g):
        total += (-c.weight if c.components % 2 else c.weight) if signed else c.weight
    if signed and g.n % 2:
        total = -total
    return total


def udet(g: Multigraph, method: str = "auto") -> Fraction:
    """Undirected determinant ``(-1)^n sum_c (-1)^|c| w(c)``.

    ``method`` is ``"enumerate"`` (the defining sum), ``"frontier"`` (the
    memoized transfer count of :mod:`ucount.transfer`) or ``"auto"``, which
    enumerates small graphs and uses the transfer count above 40 vertices.
    """
    if _pick(g, method) == "frontier":
        from .transfer import frontier_count

        return frontier_count(g, signed=True)
    return _sum_covers(g, signed=True)


def uperm(g: Multigraph, method: str = "auto") -> Fraction:
    """Undirected permanent: the weighted number of 2-factors."""
    if _pick(g, method) == "frontier":
        from .transfer import frontier_count

        return frontier_count(g, signed=False)
    return _sum_covers(g, signed=False)


def _pick(g: Multigraph, method: str) -> str:
    if method not in ("auto", "enumerate", "frontier"):
        raise InputError(f"unknown counting method {method!r}")
    if method == "auto":
        return "frontier" if g.n > 40 else "enumerate"
    return method


def enumerate_perfect_matchings(g: Multigraph) -> Iterator[frozenset]:
    if g.n % 2:
        return
    ends = [(e.u, e.v) for e in g.edges if not e.is_loop]
    ids = [e.id for e in g.edges if not e.is_loop]
    for pick in _search(g.n, ends, 1):
        yield frozenset(ids[i] for i in pick)


def perfmatch(g: Multigraph) -> Fraction:
    total = Fraction(0)
    for m in enumerate_perfect_matchings(g):
        w = Fraction(1)
        for e in m:
            w *= g.edges[e].w
        total += w
    return total


def has_perfect_matching(g: Multigraph, vertices: Iterable[int] | None = None) -> bool:
    """Whether the subgraph induced on ``vertices`` has a perfect matching."""
    vs = sorted(set(g.vertices() if vertices is None else vertices))
    if len(vs) % 2:
        return False
    index = {v: i for i, v in enumerate(vs)}
    nbr = [0] * len(vs)
    for e in g.edges:
        if e.u in index and e.v in index and not e.is_loop:
            nbr[index[e.u]] |= 1 << index[e.v]
            nbr[index[e.v]] |= 1 << index[e.u]

    @lru_cache(maxsize=None)
    def rec(mask: int) -> bool:
        if not mask:
            return True
        low = mask & -mask
        i = low.bit_length() - 1
        cand = nbr[i] & mask & ~low
        while cand:
            b = cand & -cand
            if rec(mask & ~low & ~b):
                return True
            cand ^= b
        return False

    return rec((1 << len(vs)) - 1)


# gadget signatures

def pairing_parity(p, base) -> int:
    """Parity of the number of pairing modifications turning ``base`` into ``p``.

    Computed as ``(k - #cycles(base + p)) mod 2`` where ``k`` is the number of
    pairs: a modification either merges two alternating cycles or splits one.
    """
    p = [tuple(x) for x in p]
    base = [tuple(x) for x in base]
    sp = sorted(x for q in p for x in q)
    sb = sorted(x for q in base for x in q)
    if sp != sb or len(set(sp)) != len(sp):
        raise MismatchedSupport("pairings must cover the same stubs exactly once")
    mate_p = {}
    mate_b = {}
    for a, b in p:
        mate_p[a], mate_p[b] = b, a
    for a, b in base:
        mate_b[a], mate_b[b] = b, a
    seen = set()
    cycles = 0
    for s in sp:
        if s in seen:
            continue
        cycles += 1
        x = s
        while x not in seen:
            seen.add(x)
            y = mate_p[x]
            seen.add(y)
            x = mate_b[y]
    return (len(p) - cycles) % 2


def _cover_components(g: Multigraph, pick, external, m: int) -> tuple[int, list]:
    """Closed cycle count and stub pairs of a gadget cover, by union-find."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.n
    for i in pick:
        if i < m:
            e = g.edges[i]
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[a] = b
                comps -= 1
    ends: dict = {}
    for i in pick:
        if i >= m:
            s = external[i - m]
            ends.setdefault(find(s.vertex), []).append(s.name)
    pairs = [tuple(v) for v in ends.values()]
    return comps - len(pairs), pairs


def gadget_signature(gad: Gadget, flavor: str = PERM) -> SignatureTable:
    """Signature of ``gad`` keyed by active stubs plus the marked edges used."""
    if flavor not in (PERM, DET):
        raise InputError(f"unknown flavor {flavor!r}")
    g = gad.graph
    if flavor == DET and len(gad.external) >= 4 and gad.base_pairing is None:
        raise MissingBasePairing(f"{gad.name}: determinantal signature needs a base pairing")
    ends = [(e.u, e.v) for e in g.edges] + [(s.vertex,) for s in gad.external]
    m = g.m
    order = _visit_order(g)
    weights = [e.w for e in g.edges] + [s.multiplier for s in gad.external]
    weights = [int(w) if w.denominator == 1 else w for w in weights]
    names = [s.name for s in gad.external]
    marked_by_edge = {eid: name for name, eid in gad.marked.items()}
    table: dict = {}
    conventions: dict = {}
    for pick in _search(g.n, ends, 2, order):
        w = 1
        for i in pick:
            if weights[i] != 1:
                w *= weights[i]
        stubs = [names[i - m] for i in pick if i >= m]
        key = frozenset(stubs) | frozenset(marked_by_edge[i] for i in pick if i in marked_by_edge)
        if flavor == DET:
            cycles, pairs = _cover_components(g, pick, gad.external, m)
            tau = 0
            if len(stubs) >= 4:
                base = conventions.get(frozenset(stubs))
                if base is None:
                    base = conventions[frozenset(stubs)] = base_pairing_for(gad, stubs)
                tau = pairing_parity(pairs, base)
            if (g.n + cycles + tau) % 2:
                w = -w
        table[key] = table.get(key, 0) + w
    table = {k: Fraction(v) for k, v in table.items()}
    return SignatureTable(flavor, {k: v for k, v in table.items() if v != 0}, gad.base_pairing, conventions)


def base_pairing_for(gad: Gadget, active) -> tuple:
    """Reference pairing of the active stubs.

    The gadget's base pairing is used when it pairs the active stubs among
    themselves; otherwise the active stubs are paired consecutively in
    counter-clockwise order, which is non-crossing and hence realizable.
    """
    active = set(active)
    if gad.base_pairing is not None:
        base = [p for p in gad.base_pairing if p[0] in active or p[1] in active]
        if all(a in active and b in active for a, b in base):
            return tuple(base)
    ordered = [s.name for s in gad.external if s.name in active]
    return tuple(zip(ordered[0::2], ordered[1::2]))


# cycles and orientations

def enumerate_simple_cycles(g: Multigraph) -> Iterator[Cycle]:
    """Every simple cycle once, rooted at its smallest vertex.

    Loops give cycles of length 1 and parallel edges cycles of length 2.
    """
    for e in g.edges:
        if e.is_loop:
            yield Cycle((e.u,), (e.id,))
    for s in g.vertices():
        path_v = [s]
        path_e: list[int] = []
        on_path = {s}

        def rec(v):
            for eid in g.incident(v):
                ed = g.edges[eid]
                if ed.is_loop or (path_e and eid == path_e[-1]):
                    continue
                x = ed.other(v)
                if x == s and path_e:
                    if path_e[0] < eid:
                        yield Cycle(tuple(path_v), tuple(path_e) + (eid,))
                    continue
                if x < s or x in on_path:
                    continue
                path_v.append(x)
                path_e.append(eid)
                on_path.add(x)
                yield from rec(x)
                on_path.discard(x)
                path_v.pop()
                path_e.pop()

        yield from rec(s)


def enumerate_central_cycles(g: Multigraph) -> Iterator[Cycle]:
    for c in enumerate_simple_cycles(g):
        rest = set(g.vertices()) - set(c.vertices)
        if has_perfect_matching(g, rest):
            yield c


def forward_count(g: Multigraph, c: Cycle) -> int:
    """Edges of ``c`` oriented along its traversal order."""
    k = 0
    for i, eid in enumerate(c.edges):
        if g.edges[eid].tail == c.vertices[i] and not g.edges[eid].is_loop:
            k += 1
    return k


def is_oddly_oriented(g: Multigraph, c: Cycle) -> bool:
    return forward_count(g, c) % 2 == 1


def f_value(g: Multigraph, cover: CycleCover) -> int:
    """``(-1)^|c| sgn(complement)`` for a cover of a cubic oriented graph."""
    comp = [g.edges[e] for e in range(g.m) if e not in cover.edges]
    pairs = [(e.tail, e.head) for e in comp]
    return (-1) ** cover.components * matching_sign(pairs)


def f_constancy_check(g: Multigraph):
    """Return ``("constant", value)`` or ``("violation", cover1, cover2)``.

    ``value`` is ``None`` when the graph has no cycle cover.
    """
    first = None
    for c in enumerate_cycle_covers(g):
        f = f_value(g, c)
        if first is None:
            first = (c, f)
        elif f != first[1]:
            return ("violation", first[0], c)
    return ("constant", None if first is None else first[1])
