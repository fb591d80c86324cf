"""Gadgets: graphs with dangling external edge stubs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError, NotPlanarEmbedding
from .graph import (
    Edge,
    Multigraph,
    RotationSystem,
    dart_ref,
    graph_from_json,
    graph_to_json,
    parse_dart_ref,
    rational_str,
    to_rational,
    validate_embedding,
)


@dataclass(frozen=True)
class Stub:
    """External edge stub attached to ``vertex``.

    ``multiplier`` scales the weight of the ambient edge the stub is spliced
    into (the iff gadget uses it for its ``-d`` edge).
    """

    name: str
    vertex: int
    multiplier: Fraction = Fraction(1)


@dataclass(frozen=True)
class Gadget:
    """A gadget with stubs listed counter-clockwise around its outer face.

    ``marked`` names internal edges whose presence in a cover is reported in
    the signature keys (the literal edges of the clause gadget, the loops of
    the variable gadget).  ``stub_rotation`` is the rotation system with the
    stubs inserted as names; it is only needed for splicing.
    """

    graph: Multigraph
    external: tuple[Stub, ...]
    base_pairing: tuple[tuple[str, str], ...] | None = None
    marked: Mapping[str, int] = field(default_factory=dict)
    stub_rotation: Mapping[int, tuple] | None = None
    name: str = "gadget"
    labels: tuple = ()

    def __post_init__(self):
        names = [s.name for s in self.external]
        if len(set(names)) != len(names):
            raise InputError("stub names must be distinct")
        for s in self.external:
            if not 0 <= s.vertex < self.graph.n:
                raise InputError(f"stub {s.name} attaches to a missing vertex")
        if self.base_pairing is not None:
            flat = [x for p in self.base_pairing for x in p]
            if sorted(flat) != sorted(names):
                raise InputError("base pairing must pair up all external stubs")
        overlap = set(self.marked) & set(names)
        if overlap:
            raise InputError(f"marked edge names clash with stubs: {sorted(overlap)}")

    @property
    def stub_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.external)

    def stub(self, name: str) -> Stub:
        for s in self.external:
            if s.name == name:
                return s
        raise KeyError(name)

    def stub_degree(self, v: int) -> int:
        return sum(1 for s in self.external if s.vertex == v)

    def validate_embedding(self) -> None:
        """Close the stubs at a vertex at infinity and run the Euler check.

        Around the vertex at infinity the stubs appear in reverse order, so
        this also confirms that ``external`` is listed counter-clockwise.
        """
        if self.stub_rotation is None:
            raise NotPlanarEmbedding(f"{self.name}: no embedding recorded")
        g = self.graph
        inf = g.n
        es = list(g.edges)
        stub_edge = {}
        for s in self.external:
            stub_edge[s.name] = len(es)
            es.append(Edge(len(es), s.vertex, inf))
        rot = {}
        for v in g.vertices():
            ring = []
            for item in self.stub_rotation.get(v, ()):
                ring.append((stub_edge[item], 0) if isinstance(item, str) else tuple(item))
            rot[v] = ring
        rot[inf] = [(stub_edge[s.name], 1) for s in reversed(self.external)]
        closed = Multigraph(g.n + 1, es)
        validate_embedding(closed, RotationSystem(rot))


def gadget_to_json(gad: Gadget) -> dict:
    out = graph_to_json(gad.graph)
    out["name"] = gad.name
    out["external"] = []
    for s in gad.external:
        item = {"stub": s.name, "vertex": s.vertex}
        if s.multiplier != 1:
            item["weight"] = rational_str(s.multiplier)
        out["external"].append(item)
    if gad.base_pairing is not None:
        out["base_pairing"] = [list(p) for p in gad.base_pairing]
    if gad.marked:
        out["marked"] = dict(gad.marked)
    if gad.stub_rotation is not None:
        out["rotation"] = {
            str(v): [f"s:{x}" if isinstance(x, str) else dart_ref(x) for x in ring]
            for v, ring in sorted(gad.stub_rotation.items())
        }
    return out


def gadget_from_json(data: Mapping) -> Gadget:
    try:
        plain = dict(data)
        rot_raw = plain.pop("rotation", None)
        g = graph_from_json(plain)
        ext = tuple(
            Stub(str(x["stub"]), int(x["vertex"]), to_rational(x.get("weight", "1"))) for x in data.get("external", [])
        )
        bp = data.get("base_pairing")
        bp = tuple((str(a), str(b)) for a, b in bp) if bp is not None else None
        marked = {str(k): int(v) for k, v in (data.get("marked") or {}).items()}
        stub_rot = None
        if rot_raw is not None:
            stub_rot = {}
            plain_rot = {}
            for v, refs in rot_raw.items():
                ring = [r[2:] if str(r).startswith("s:") else parse_dart_ref(r) for r in refs]
                stub_rot[int(v)] = tuple(ring)
                plain_rot[int(v)] = [x for x in ring if not isinstance(x, str)]
            for v in g.vertices():
                plain_rot.setdefault(v, [])
            g = g.replace(rotation=RotationSystem(plain_rot))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed gadget JSON: {exc}") from exc
    return Gadget(g, ext, bp, marked, stub_rot, str(data.get("name", "gadget")))


def make_gadget(
    n: int,
    edges: Sequence[tuple],
    stubs: Sequence[tuple],
    base_pairing=None,
    marked=None,
    stub_rotation=None,
    name="gadget",
    labels=(),
) -> Gadget:
    """Shorthand constructor: ``edges`` are ``(u, v[, w])``, stubs ``(name, vertex[, mult])``."""
    es = []
    for i, t in enumerate(edges):
        w = t[2] if len(t) > 2 else 1
        es.append(Edge(i, t[0], t[1], to_rational(w)))
    ext = tuple(Stub(t[0], t[1], to_rational(t[2]) if len(t) > 2 else Fraction(1)) for t in stubs)
    rot = None
    if stub_rotation is not None:
        rot = RotationSystem({v: [x for x in stub_rotation.get(v, ()) if not isinstance(x, str)] for v in range(n)})
    g = Multigraph(n, es, rot)
    bp = tuple(tuple(p) for p in base_pairing) if base_pairing is not None else None
    return Gadget(g, ext, bp, dict(marked or {}), stub_rotation, name, tuple(labels))
