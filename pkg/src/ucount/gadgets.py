"""Constructors for the reduction gadgets, drawn from their figure coordinates.

Every constructor returns an embedded :class:`~ucount.gadget.Gadget` whose
stubs are listed counter-clockwise.  Curved edges of the drawings are given by
their departure angles (degrees) at each end.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError
from .gadget import Gadget, Stub
from .graph import Edge, Multigraph, RotationSystem, to_rational

DET = "det"
PERM = "perm"


def mode_d(mode: str) -> Fraction:
    """The weight ``d``: 1 for determinants, -1 for permanents."""
    if mode == DET:
        return Fraction(1)
    if mode == PERM:
        return Fraction(-1)
    raise InputError(f"mode must be 'det' or 'perm', got {mode!r}")


class Drawing:
    """Vertices with positions, edges with departure angles, and stubs."""

    def __init__(self):
        self.pos: list[tuple] = []
        self.labels: list[str] = []
        self.edges: list[list] = []  # [u, v, w, angle_u, angle_v]
        self.stubs: list[list] = []  # [name, vertex, angle, multiplier]
        self.marked: dict[str, int] = {}

    def vertex(self, x, y, label="") -> int:
        self.pos.append((x, y))
        self.labels.append(label or f"v{len(self.pos) - 1}")
        return len(self.pos) - 1

    def edge(self, u, v, w=1, au=None, av=None, mark=None) -> int:
        if au is None:
            au = self._angle(u, v)
        if av is None:
            av = self._angle(v, u)
        self.edges.append([u, v, to_rational(w), au, av])
        if mark is not None:
            self.marked[mark] = len(self.edges) - 1
        return len(self.edges) - 1

    def stub(self, name, v, angle, multiplier=1) -> None:
        self.stubs.append([name, v, angle, to_rational(multiplier)])

    def _angle(self, u, v) -> float:
        (x0, y0), (x1, y1) = self.pos[u], self.pos[v]
        return math.degrees(math.atan2(y1 - y0, x1 - x0))

    def place(self, other: "Drawing", dx=0.0, dy=0.0, scale=1.0, rotate=0.0, prefix="") -> dict:
        """Copy ``other`` in (rotated by ``rotate`` degrees, scaled, shifted).

        Returns the vertex map and the other drawing's stubs transported, so
        the caller can connect them.
        """
        c, s = math.cos(math.radians(rotate)), math.sin(math.radians(rotate))
        vmap = {}
        for i, (x, y) in enumerate(other.pos):
            xr, yr = c * x - s * y, s * x + c * y
            vmap[i] = self.vertex(dx + scale * xr, dy + scale * yr, prefix + other.labels[i])
        for u, v, w, au, av in other.edges:
            self.edges.append([vmap[u], vmap[v], w, au + rotate, av + rotate])
        for name, eid in other.marked.items():
            self.marked[prefix + name] = len(self.edges) - len(other.edges) + eid
        stubs = {name: (vmap[v], ang + rotate, mult) for name, v, ang, mult in other.stubs}
        return {"vertices": vmap, "stubs": stubs}

    def gadget(self, order: list[str], name: str, base_pairing=None) -> Gadget:
        """Freeze into a gadget; ``order`` lists the stub names counter-clockwise."""
        n = len(self.pos)
        es = [Edge(i, u, v, w) for i, (u, v, w, _, _) in enumerate(self.edges)]
        items: dict[int, list] = {v: [] for v in range(n)}
        for i, (u, v, _, au, av) in enumerate(self.edges):
            items[u].append((au % 360, (i, 0)))
            items[v].append((av % 360, (i, 1)))
        by_name = {s[0]: s for s in self.stubs}
        for sname, v, ang, _ in self.stubs:
            items[v].append((ang % 360, sname))
        stub_rot = {}
        for v, lst in items.items():
            angles = [a for a, _ in lst]
            if len(set(round(a, 9) for a in angles)) != len(angles):
                raise ValueError(f"{name}: two darts leave vertex {self.labels[v]} at the same angle")
            stub_rot[v] = tuple(x for _, x in sorted(lst, key=lambda t: t[0]))
        rot = RotationSystem({v: [x for x in ring if not isinstance(x, str)] for v, ring in stub_rot.items()})
        ext = tuple(Stub(sname, by_name[sname][1], by_name[sname][3]) for sname in order)
        if sorted(order) != sorted(by_name):
            raise ValueError(f"{name}: stub order must list every stub once")
        bp = tuple(tuple(p) for p in base_pairing) if base_pairing is not None else None
        gad = Gadget(Multigraph(n, es, rot), ext, bp, dict(self.marked), stub_rot, name, tuple(self.labels))
        gad.validate_embedding()
        return gad


# crossover

CROSS_STUBS = ["LT", "LB", "RB", "RT"]


def _crossover_drawing(mode: str) -> Drawing:
    d = mode_d(mode)
    dr = Drawing()
    a, b, c = dr.vertex(-1, 2, "a"), dr.vertex(0, 2, "b"), dr.vertex(1, 2, "c")
    dd, e, f = dr.vertex(-1, 1, "d"), dr.vertex(0, 1, "e"), dr.vertex(1, 1, "f")
    for u, v in [(a, b), (b, c), (dd, e), (e, f), (a, dd)]:
        dr.edge(u, v)
    dr.edge(b, e, d)
    dr.edge(c, f)
    dr.stub("LT", a, 180)
    dr.stub("RT", c, 0)
    dr.stub("LB", dd, 180)
    dr.stub("RB", f, 0)
    return dr


def make_skew_crossover(mode: str = PERM) -> Gadget:
    """Six-vertex crossover whose middle rung has weight ``d``.

    Opposite stubs (left-top with right-bottom, left-bottom with right-top)
    are used together or not at all.
    """
    return _crossover_drawing(mode).gadget(CROSS_STUBS, f"skew-crossover[{mode}]", [("LT", "LB"), ("RT", "RB")])


# iff

IFF_STUBS = ["Lt", "Lb", "Rb", "Rt"]


def _iff_drawing(mode: str) -> Drawing:
    d = mode_d(mode)
    dr = Drawing()
    x = dr.place(_crossover_drawing(mode), dx=6.3, dy=-1.0, prefix="X.")
    L = dr.vertex(4.2, -0.4, "L")
    R = dr.vertex(8.4, 1.4, "R")
    lt, _, _ = x["stubs"]["LT"]
    lb, _, _ = x["stubs"]["LB"]
    rb, _, _ = x["stubs"]["RB"]
    rt, _, _ = x["stubs"]["RT"]
    dr.edge(L, lb, 1, 45, 180)
    dr.edge(L, rb, 1, 315, 0)
    dr.edge(R, rt, 1, 225, 0)
    dr.edge(R, lt, -1, 135, 180)
    dr.stub("Lt", L, 135)
    dr.stub("Lb", L, 225)
    dr.stub("Rb", R, 315, -d)
    dr.stub("Rt", R, 45)
    return dr


def _iff_multi_drawing(mode: str) -> Drawing:
    d = mode_d(mode)
    dr = Drawing()
    p = [dr.vertex(i, 0, f"p{i}") for i in range(4)]
    for i in range(3):
        dr.edge(p[i], p[i + 1], -1 if i == 1 else 1, 45, 135)
        dr.edge(p[i], p[i + 1], 1, 315, 225)
    dr.stub("Lt", p[0], 135)
    dr.stub("Lb", p[0], 225)
    dr.stub("Rb", p[3], 315, d)
    dr.stub("Rt", p[3], 45)
    return dr


def make_iff(mode: str = PERM, allow_multiedges: bool = False) -> Gadget:
    """Iff gadget: all four stubs used or none.

    The stubs ``Lt``/``Lb`` split one synchronized edge and ``Rb``/``Rt`` the
    other; ``Rb`` carries the weight multiplier for the ambient edge.  The
    multi-edge variant is a path of four vertices with doubled edges.
    """
    dr = _iff_multi_drawing(mode) if allow_multiedges else _iff_drawing(mode)
    kind = "iff-multi" if allow_multiedges else "iff"
    return dr.gadget(IFF_STUBS, f"{kind}[{mode}]", [("Lt", "Lb"), ("Rb", "Rt")])


# the six-stub block: one edge crossing both strands of a synchronizing wire

BLOCK_STUBS = ["r_in", "A_in", "B_in", "r_out", "B_out", "A_out"]


def make_crossing_block(mode: str = PERM) -> Gadget:
    """Two stacked crossovers carrying edge ``r`` across strands ``A`` and ``B``."""
    dr = Drawing()
    x1 = dr.place(_crossover_drawing(mode), dx=0, dy=0, prefix="X1.")
    x2 = dr.place(_crossover_drawing(mode), dx=0, dy=-2.5, prefix="X2.")
    s1, s2 = x1["stubs"], x2["stubs"]
    dr.edge(s1["RB"][0], s2["RT"][0], 1, 0, 0)
    dr.stub("r_in", s1["LT"][0], 180)
    dr.stub("A_in", s1["LB"][0], 180)
    dr.stub("B_in", s2["LT"][0], 180)
    dr.stub("r_out", s2["LB"][0], 180)
    dr.stub("B_out", s2["RB"][0], 0)
    dr.stub("A_out", s1["RT"][0], 0)
    return dr.gadget(BLOCK_STUBS, f"crossing-block[{mode}]", [("r_in", "r_out"), ("A_in", "A_out"), ("B_in", "B_out")])


# variable and clause gadgets

def _variable_core() -> tuple[Drawing, int]:
    dr = Drawing()
    c = dr.vertex(0, 0, "C")
    return dr, c


def make_variable_gadget(occurrences_pos: int = 0, occurrences_neg: int = 0, mode: str = DET) -> Gadget:
    """One vertex with two loops, ``x`` and ``~x``.

    Each loop is subdivided by one splice vertex per occurrence; a splice
    vertex carries the two stubs that lead to the far side of its iff
    gadget.  A loop without occurrences is synchronized with itself through
    an iff gadget so that no bare loop remains.  The first segment of each
    loop is marked with the literal name.
    """
    if occurrences_pos < 0 or occurrences_neg < 0:
        raise InputError("occurrence counts must be non-negative")
    dr, c = _variable_core()
    order = []
    for lit, k, base in (("x", occurrences_pos, 180), ("~x", occurrences_neg, 0)):
        out_angle, back_angle = base - 80, base + 80
        if base == 0:
            out_angle, back_angle = 80, -80
        if k == 0:
            iff = dr.place(_iff_drawing(mode), dx=-9 if base == 180 else 3, dy=0, prefix=f"{lit}.iff.")
            st = iff["stubs"]
            dr.edge(c, st["Lt"][0], 1, out_angle, st["Lt"][1], mark=lit)
            dr.edge(st["Lb"][0], st["Rb"][0], st["Rb"][2], st["Lb"][1], st["Rb"][1])
            dr.edge(st["Rt"][0], c, 1, st["Rt"][1], back_angle)
            continue
        sign = -1 if base == 180 else 1
        prev, prev_angle = c, out_angle
        sites = []
        for j in range(k):
            s = dr.vertex(sign * (j + 1), 2, f"{lit}.site{j}")
            sites.append(s)
            dr.edge(prev, s, 1, prev_angle, 180 if sign > 0 else 0, mark=lit if j == 0 else None)
            prev, prev_angle = s, 0 if sign > 0 else 180
        dr.edge(prev, c, 1, 270, back_angle)
        for j, s in enumerate(sites):
            dr.stub(f"{lit}.{j}.a", s, 60)
            dr.stub(f"{lit}.{j}.b", s, 120)
            order += [f"{lit}.{j}.a", f"{lit}.{j}.b"]
    gad_order = _ccw_stub_order(dr)
    pairs = [(f"{n[:-2]}.a", f"{n[:-2]}.b") for n in gad_order if n.endswith(".a")] or None
    return dr.gadget(gad_order, f"variable[{occurrences_pos},{occurrences_neg}]", pairs)


def _ccw_stub_order(dr: Drawing) -> list[str]:
    """Stub names sorted counter-clockwise around the drawing's centroid."""
    if not dr.stubs:
        return []
    cx = sum(x for x, _ in dr.pos) / len(dr.pos)
    cy = sum(y for _, y in dr.pos) / len(dr.pos)

    def key(s):
        x, y = dr.pos[s[1]]
        a = math.radians(s[2])
        px, py = x + 0.3 * math.cos(a), y + 0.3 * math.sin(a)
        return math.atan2(py - cy, px - cx)

    return [s[0] for s in sorted(dr.stubs, key=key)]


def _clause_drawing(mode: str) -> Drawing:
    d = mode_d(mode)
    dr = Drawing()
    v = [None]
    for label, x, y in [("v1", 0, 0), ("v2", 1, 1.5), ("v3", 1, 0.5), ("v4", 1, -0.5),
                        ("v5", 3, 1.5), ("v6", 3, 0.5), ("v7", 3, -1.5), ("v8", 4, 0)]:
        v.append(dr.vertex(x, y, label))
    dr.edge(v[1], v[2], 1, 90, 180)
    dr.edge(v[2], v[5])
    dr.edge(v[5], v[8], 1, 0, 90)
    dr.edge(v[2], v[3])
    dr.edge(v[5], v[6], -d)
    dr.edge(v[3], v[1], 1, 180, 55)
    dr.edge(v[3], v[6], 1, mark="b")
    dr.edge(v[6], v[8], 1, 0, 125)
    dr.edge(v[4], v[1], 1, 180, -55)
    dr.edge(v[4], v[8], 1, 0, 235)
    dr.edge(v[4], v[4], 1, 225, 315, mark="a")
    dr.edge(v[7], v[1], 1, 180, 270)
    dr.edge(v[7], v[8], 1, 0, 270)
    dr.edge(v[7], v[7], 1, 225, 315, mark="c")
    return dr


def make_clause_gadget(mode: str = PERM) -> Gadget:
    """Eight-vertex clause gadget with literal edges marked ``a``, ``b``, ``c``.

    A literal is true exactly when its edge is in the cover; the gadget has
    one cover per satisfying pattern and none when all three are false.
    """
    return _clause_drawing(mode).gadget([], f"clause[{mode}]")


# cubicization gadgets

AUX_STUBS = ["BL", "BR", "TR", "TL"]


def _aux_drawing() -> Drawing:
    dr = Drawing()
    pts = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]
    v = [dr.vertex(x, y, f"v{i + 1}") for i, (x, y) in enumerate(pts)]
    w = [dr.vertex(x, y, f"w{i + 1}") for i, (x, y) in enumerate([(1, 0.5), (1.5, 1), (1, 1.5), (0.5, 1)])]
    for i in range(8):
        dr.edge(v[i], v[(i + 1) % 8])
    for i in range(4):
        dr.edge(w[i], w[(i + 1) % 4])
    for i in range(4):
        dr.edge(v[2 * i + 1], w[i])
    dr.stub("BL", v[0], 225)
    dr.stub("BR", v[2], 315)
    dr.stub("TR", v[4], 45)
    dr.stub("TL", v[6], 135)
    return dr


def make_auxiliary_gadget() -> Gadget:
    """Cubic 12-vertex gadget: an 8-cycle around a 4-cycle, stubs at the corners."""
    return _aux_drawing().gadget(AUX_STUBS, "auxiliary", [("BL", "TL"), ("BR", "TR")])


def _null_drawing() -> Drawing:
    dr = Drawing()
    v1, v2, v3, v4 = dr.vertex(1, 0, "v1"), dr.vertex(2, 1, "v2"), dr.vertex(2, -1, "v3"), dr.vertex(3, 0, "v4")
    dr.edge(v1, v2)
    dr.edge(v2, v3)
    dr.edge(v3, v4)
    dr.edge(v1, v3, -1)
    dr.edge(v2, v4)
    dr.stub("in", v1, 180)
    dr.stub("out", v4, 0)
    return dr


def make_null_edge() -> Gadget:
    """Four-vertex gadget behaving like an edge of weight zero."""
    return _null_drawing().gadget(["in", "out"], "null-edge")


DEG4_STUBS = ["BL", "BR", "TR", "TL"]


def make_degree4_vertex_gadget() -> Gadget:
    """Four auxiliary gadgets in a ring (ring edges -1/2) plus two null edges.

    Its determinantal signature is -4 on every pair of stubs and 0 on the
    empty set and on all four.
    """
    dr = Drawing()
    aux = {}
    for name, (ox, oy) in {"A1": (0, 0), "A2": (4, 0), "A3": (4, 4), "A4": (0, 4)}.items():
        aux[name] = dr.place(_aux_drawing(), dx=ox, dy=oy, prefix=f"{name}.")["stubs"]
    half = Fraction(-1, 2)

    def link(p, q, w):
        dr.edge(aux[p[0]][p[1]][0], aux[q[0]][q[1]][0], w)

    def null(p, q):
        (u, _, _), (v, _, _) = aux[p[0]][p[1]], aux[q[0]][q[1]]
        (x0, y0), (x1, y1) = dr.pos[u], dr.pos[v]
        ang = math.degrees(math.atan2(y1 - y0, x1 - x0))
        c, s = math.cos(math.radians(ang)), math.sin(math.radians(ang))
        scale = math.hypot(x1 - x0, y1 - y0) / 4
        # the null drawing is centred on (2, 0); move that point onto the midpoint
        mx, my = (x0 + x1) / 2, (y0 + y1) / 2
        sub = dr.place(_null_drawing(), rotate=ang, scale=scale, dx=mx - scale * 2 * c, dy=my - scale * 2 * s,
                       prefix=f"null{p[0]}{q[0]}.")
        dr.edge(u, sub["stubs"]["in"][0])
        dr.edge(sub["stubs"]["out"][0], v)

    link(("A1", "BR"), ("A2", "BL"), half)
    link(("A2", "TR"), ("A3", "BR"), half)
    link(("A3", "TL"), ("A4", "TR"), half)
    link(("A4", "BL"), ("A1", "TL"), half)
    null(("A1", "TR"), ("A4", "BR"))
    null(("A2", "TL"), ("A3", "BL"))
    dr.stub("BL", aux["A1"]["BL"][0], 225)
    dr.stub("BR", aux["A2"]["BR"][0], 315)
    dr.stub("TR", aux["A3"]["TR"][0], 45)
    dr.stub("TL", aux["A4"]["TL"][0], 135)
    return dr.gadget(DEG4_STUBS, "degree4-vertex", [("BL", "TL"), ("BR", "TR")])


GADGETS = {
    "skew-crossover": make_skew_crossover,
    "iff": make_iff,
    "iff-multi": lambda mode=PERM: make_iff(mode, allow_multiedges=True),
    "crossing-block": make_crossing_block,
    "clause": make_clause_gadget,
    "variable": lambda mode=DET: make_variable_gadget(0, 0, mode),
    "auxiliary": lambda mode=DET: make_auxiliary_gadget(),
    "null-edge": lambda mode=DET: make_null_edge(),
    "degree4-vertex": lambda mode=DET: make_degree4_vertex_gadget(),
}
