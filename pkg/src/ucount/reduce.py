"""Compile 3-CNF formulas into planar graphs whose cycle covers count models.

``compile(phi, "perm")`` gives a graph ``B`` with ``uperm(B) = #SAT(phi)``
and ``compile(phi, "det")`` a graph ``A`` with ``(-1)^m udet(A) = #SAT(phi)``
where ``m`` is the number of clauses.  Each variable is a vertex with two
loops (true and false), each clause is the eight-vertex clause gadget, and
every literal occurrence synchronizes a loop with a literal edge of its
clause through an iff gadget whose wires may cross other edges.
:func:`cubicize` then replaces degree-4 vertices by a cubic gadget.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .embed import PlaneBuilder, check_route, route
from .errors import CnfParseError, DegreeTooHigh, InputError, NoPadding, TooManyVariables
from .gadgets import (
    DET,
    PERM,
    make_clause_gadget,
    make_crossing_block,
    make_degree4_vertex_gadget,
    make_iff,
    make_null_edge,
    mode_d,
)
from .graph import Multigraph, twin

SAT_COUNT_MAX_VARS = 24
# udet of the cubic degree-4 vertex gadget relative to a single vertex
DEG4_FACTOR = 4


# formulas

@dataclass(frozen=True)
class CnfFormula:
    """Clauses are triples of non-zero ints: ``3`` is x3, ``-3`` is not x3."""

    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InputError("variable count must be non-negative")
        for c in self.clauses:
            if len(c) != 3:
                raise InputError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise InputError(f"literal {lit} out of range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @classmethod
    def of(cls, clauses: Iterable[Sequence[int]], n: int | None = None) -> "CnfFormula":
        cs = tuple(tuple(int(x) for x in c) for c in clauses)
        if n is None:
            n = max((abs(x) for c in cs for x in c), default=0)
        return cls(n, cs)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        lines += [" ".join(str(x) for x in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; every clause must have exactly three literals."""
    header = None
    nums: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise CnfParseError(f"line {lineno}: bad header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise CnfParseError(f"line {lineno}: bad header {line!r}") from exc
            continue
        if header is None:
            raise CnfParseError(f"line {lineno}: clause before header")
        if not re.fullmatch(r"[-+0-9\s]+", line):
            raise CnfParseError(f"line {lineno}: unexpected token in {line!r}")
        nums.extend(int(x) for x in line.split())
    if header is None:
        raise CnfParseError("missing 'p cnf' header")
    n, m = header
    if nums and nums[-1] != 0:
        raise CnfParseError("last clause is not terminated by 0")
    clauses, cur = [], []
    for x in nums:
        if x == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    if len(clauses) != m:
        raise CnfParseError(f"header announces {m} clauses, found {len(clauses)}")
    try:
        return CnfFormula(n, tuple(clauses))
    except InputError as exc:
        raise CnfParseError(str(exc)) from exc


def sat_count(phi: CnfFormula) -> int:
    """Number of satisfying assignments, by truth table over all ``n`` variables."""
    if phi.n > SAT_COUNT_MAX_VARS:
        raise TooManyVariables(f"{phi.n} variables exceed the truth-table bound {SAT_COUNT_MAX_VARS}")
    import numpy as np

    total = 0
    chunk_bits = min(phi.n, 20)
    for hi in range(1 << (phi.n - chunk_bits)):
        a = np.arange(1 << chunk_bits, dtype=np.int64) | (hi << chunk_bits)
        ok = np.ones(a.shape, dtype=bool)
        for c in phi.clauses:
            sat = np.zeros(a.shape, dtype=bool)
            for lit in c:
                bit = (a >> (abs(lit) - 1)) & 1
                sat |= bit == (1 if lit > 0 else 0)
            ok &= sat
        total += int(ok.sum())
    return total


# splicing

@dataclass
class _Node:
    """A vertex standing in for a gadget, with the rotation index of its first stub.

    Later subdivisions rename darts in place, so the index stays valid
    while the dart names may not.
    """

    node: int
    start: int
    smooth: bool = False


class Splicer:
    """Synchronizes edge pairs of a plane builder with (extended) iff gadgets.

    Gadgets stand in as single vertices until :meth:`finalize`, so routing
    works on a small graph; edges tagged ``"scaffold"`` only serve to keep
    the drawing connected and are removed at the end.
    """

    def __init__(self, builder: PlaneBuilder, mode: str, allow_multiedges: bool = False):
        mode_d(mode)
        self.b = builder
        self.mode = mode
        self.allow_multiedges = allow_multiedges
        self.iffs: list[_Node] = []
        self.crossings: list[_Node] = []
        self.merges: list[_Node] = []
        self.count = 0

    def sync(self, sources: list[int], targets: list[int], crossed: list[int] | None = None) -> int:
        """Insert an iff between a source edge and a target edge; returns its index."""
        b = self.b
        if crossed is None:
            d1, path, d2 = route(b, sources, targets, set(sources) | set(targets))
        else:
            d1, path, d2 = check_route(b, sources[0], list(crossed), targets[0])
        t = self.count
        self.count += 1
        node, piece = b.subdivide(d1[0], f"iff[{t}]")
        corners = [(node, b.corner_after_subdivide(d1, piece))]
        outs = []
        for i, d in enumerate(path):
            c, piece = b.subdivide(d[0], f"cross[{t}.{i}]")
            cin = (c, b.corner_after_subdivide(d, piece))
            cout = (c, b.corner_after_subdivide(twin(d), piece))
            corners += [cin, cout]
            outs.append((c, cout[1], b.tag[d[0]] == "scaffold"))
        merge, piece = b.subdivide(d2[0], f"merge[{t}]")
        corners.append((merge, b.corner_after_subdivide(d2, piece)))
        for i in range(0, len(corners), 2):
            b.insert_strands(corners[i], corners[i + 1], ("wire", t))
        # iff ring: the split source edge, then the right and left strands
        self.iffs.append(_Node(node, b.rot[node].index(corners[0][1])))
        # crossing ring: r_in, A_in, B_in, r_out, B_out, A_out
        for c, xout, smooth in outs:
            self.crossings.append(_Node(c, b.rot[c].index(xout), smooth))
        # merge ring: the two target pieces, then the left and right strands
        self.merges.append(_Node(merge, b.rot[merge].index(corners[-1][1])))
        return t

    def self_sync(self, loop: int) -> int:
        """Synchronize a loop with itself so that no bare loop remains."""
        b = self.b
        u, v = b.ends[loop]
        if u != v:
            raise InputError("self-synchronization needs a loop")
        t = self.count
        self.count += 1
        node, piece = b.subdivide(loop, f"iff[{t}]")
        z = b.add_edge(node, node, 1, ("selfsync", t))
        b.rot[node] = [(loop, 1), (z, 0), (z, 1), (piece, 0)]
        self.iffs.append(_Node(node, 0))
        return t

    def finalize(self) -> None:
        b = self.b

        def ring(nd):
            r = b.rot[nd.node]
            return r[nd.start:] + r[:nd.start]

        iff_rings = [ring(nd) for nd in self.iffs]
        cross_rings = [ring(nd) for nd in self.crossings]
        merge_rings = [ring(nd) for nd in self.merges]
        for e in b.edges_with(lambda tg: tg == "scaffold"):
            b.remove_edge(e)
        suppress = []
        for nd, r in zip(self.crossings, cross_rings):
            if nd.smooth:
                _, a_in, b_in, _, b_out, a_out = r
                suppress += b.split_vertex(nd.node, [[b_in, b_out], [a_out, a_in]])
            else:
                b.substitute(nd.node, r, make_crossing_block(self.mode), f"block[{nd.node}]")
        for nd, r in zip(self.iffs, iff_rings):
            b.substitute(nd.node, r, make_iff(self.mode, self.allow_multiedges), f"iff[{nd.node}]")
        for nd, (x, y, q, p) in zip(self.merges, merge_rings):
            suppress += b.split_vertex(nd.node, [[p, x], [y, q]])
        for v in suppress:
            b.contract(v)


@dataclass(frozen=True)
class SplicePlan:
    """Where an extended iff goes: the two edges and the edges its wires cross."""

    e1: int
    e2: int
    crossed: tuple[int, ...]
    mode: str = PERM
    allow_multiedges: bool = False

    def apply(self, g: Multigraph) -> Multigraph:
        b = PlaneBuilder.from_graph(g)
        sp = Splicer(b, self.mode, self.allow_multiedges)
        sp.sync([self.e1], [self.e2], list(self.crossed))
        sp.finalize()
        return b.freeze()[0]


def make_extended_iff(g: Multigraph, e1: int, e2: int, crossed: Sequence[int] | None = None,
                      mode: str = PERM, allow_multiedges: bool = False) -> SplicePlan:
    """Plan an iff between ``e1`` and ``e2`` whose wires cross ``crossed`` in order.

    Without ``crossed`` a shortest corridor through the faces is chosen.
    Raises RoutingNotPlanar when the listed edges do not form a corridor.
    """
    b = PlaneBuilder.from_graph(g)
    for e in (e1, e2, *(crossed or ())):
        if e not in b.ends:
            raise InputError(f"no edge {e}")
    if e1 == e2:
        raise InputError("e1 and e2 must differ")
    if crossed is None:
        _, path, _ = route(b, [e1], [e2], {e1, e2})
        crossed = [d[0] for d in path]
    else:
        check_route(b, e1, list(crossed), e2)
    return SplicePlan(e1, e2, tuple(crossed), mode, allow_multiedges)


def synchronize_edges(g: Multigraph, e1: int, e2: int, mode: str = PERM, crossed=None) -> Multigraph:
    """``g`` with an iff forcing covers to use both or neither of ``e1``, ``e2``.

    The weight of ``e2`` is multiplied by ``-d`` as the iff requires.
    """
    return make_extended_iff(g, e1, e2, crossed, mode).apply(g)


# the reduction

@dataclass
class CompiledReduction:
    graph: Multigraph
    mode: str
    scale: Fraction = Fraction(1)
    provenance: dict = field(default_factory=dict)
    formula: CnfFormula | None = None

    def provenance_json(self) -> dict:
        return {
            "mode": self.mode,
            "scale": str(self.scale),
            "vertices": {str(v): s for v, s in sorted(self.provenance.get("vertices", {}).items())},
            "edges": {str(e): s for e, s in sorted(self.provenance.get("edges", {}).items())},
        }


def _tag_str(tag) -> str:
    if isinstance(tag, tuple):
        return ":".join(str(x) for x in tag)
    return str(tag)


def compile(phi: CnfFormula, mode: str = PERM) -> CompiledReduction:
    """Planar graph of max degree 4 counting the models of ``phi``."""
    mode_d(mode)
    b = PlaneBuilder()
    anchors = []
    for i in range(1, phi.n + 1):
        c = b.add_vertex(f"var[{i}].C")
        lx = b.add_edge(c, c, 1, ("loop", i, True))
        ln = b.add_edge(c, c, 1, ("loop", i, False))
        b.rot[c] = [(lx, 0), (lx, 1), (ln, 0), (ln, 1)]
        anchors.append(c)
    for j in range(phi.m):
        gad = make_clause_gadget(mode)
        names = {eid: name for name, eid in gad.marked.items()}
        vmap, _ = b.add_gadget(
            gad, f"clause[{j}]", tag_of=lambda eid, j=j: ("lit", j, names[eid]) if eid in names else (f"clause[{j}]", eid)
        )
        anchors.append(vmap[0])
    for a, c in zip(anchors, anchors[1:]):
        b.insert_edge((a, b.rot[a][0]), (c, b.rot[c][0]), 1, "scaffold")
    sp = Splicer(b, mode)
    used = {(abs(x), x > 0) for cl in phi.clauses for x in cl}
    for i in range(1, phi.n + 1):
        for pol in (True, False):
            if (i, pol) not in used:
                (loop,) = b.edges_with(lambda tg, key=("loop", i, pol): tg == key)
                sp.self_sync(loop)
    for j, cl in enumerate(phi.clauses):
        for name, lit in zip("abc", cl):
            key_src = ("loop", abs(lit), lit > 0)
            key_dst = ("lit", j, name)
            sp.sync(b.edges_with(lambda tg: tg == key_src), b.edges_with(lambda tg: tg == key_dst))
    sp.finalize()
    g, vinfo, etags = b.freeze()
    prov = {"vertices": vinfo, "edges": {e: _tag_str(t) for e, t in etags.items()}}
    return CompiledReduction(g, mode, Fraction(1), prov, phi)


def cubicize(g: Multigraph, mode: str = DET) -> CompiledReduction:
    """Cubic graph with ``udet(result) = scale * udet(g)``.

    Degree-4 vertices become the cubic degree-4 vertex gadget (factor 4
    each).  Degree-2 vertices are joined in pairs across a shared face by
    null edges; an unpaired one is joined to a new vertex subdividing one of
    its own edges, which flips the sign of ``udet``.
    """
    if mode != DET:
        raise InputError("cubicization is defined for determinants only")
    if g.rotation is None:
        raise InputError("cubicize needs an embedded graph")
    for v in g.vertices():
        if g.degree(v) > 4:
            raise DegreeTooHigh(f"vertex {v} has degree {g.degree(v)}")
        if g.degree(v) < 2:
            raise NoPadding(f"vertex {v} has degree {g.degree(v)}; no cycle cover exists")
    b = PlaneBuilder.from_graph(g)
    deg4 = make_degree4_vertex_gadget()
    k = 0
    for v in list(g.vertices()):
        if b.degree(v) == 4:
            b.substitute(v, list(b.rot[v]), deg4, f"deg4[{v}]")
            k += 1
    null = make_null_edge()
    sign = 1
    pads = 0
    while True:
        low = [v for v in sorted(b.rot) if b.degree(v) == 2]
        if not low:
            break
        walks, _ = b.faces()
        pair = None
        for walk in walks:
            seen = {}
            for d in walk:
                h = b.head(d)
                if b.degree(h) == 2 and h not in seen:
                    seen[h] = (h, twin(d))
                    if len(seen) == 2:
                        pair = list(seen.values())
                        break
            if pair:
                break
        if pair is None:
            v = low[0]
            walk = next(w for w in walks if any(b.head(d) == v for d in w))
            # an edge at v lies in every cover, so subdividing it only flips the sign
            d = next(d for d in walk if b.head(d) == v)
            y, piece = b.subdivide(d[0], f"pad-sub[{pads}]")
            sign = -sign
            walks, face_of = b.faces()
            cv = next((v, twin(x)) for x in walks[face_of[d]] if b.head(x) == v)
            pair = [cv, (y, b.corner_after_subdivide(d, piece))]
        e = b.insert_edge(pair[0], pair[1], 1, ("pad", pads))
        x, piece = b.subdivide(e, f"null[{pads}]")
        b.substitute(x, [(e, 1), (piece, 0)], null, f"null[{pads}]")
        pads += 1
    out, vinfo, etags = b.freeze()
    if any(out.degree(v) != 3 for v in out.vertices()):
        raise NoPadding("padding did not produce a cubic graph")
    prov = {"vertices": vinfo, "edges": {e: _tag_str(t) for e, t in etags.items()}}
    return CompiledReduction(out, mode, Fraction(DEG4_FACTOR) ** k * sign, prov)
