"""Small embedded test graphs drawn from coordinates."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .graph import Edge, Multigraph, rotation_from_coordinates, trace_faces


def _from_drawing(n: int, pairs, pos, weights=None) -> Multigraph:
    es = [Edge(i, u, v, Fraction(weights[i]) if weights else Fraction(1)) for i, (u, v) in enumerate(pairs)]
    g = Multigraph(n, es)
    rot = rotation_from_coordinates(g, pos)
    g = g.replace(rotation=rot)
    return g.replace(outer=_outer_dart(g, pos))


def _outer_dart(g: Multigraph, pos):
    """A dart on the face traced clockwise (negative area) with the largest area."""
    best, best_area = None, 0.0
    for face in trace_faces(g, g.rotation):
        pts = [pos[g.tail_of(d)] for d in face]
        area = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1])) / 2
        if area < best_area:
            best, best_area = face[0], area
    return best


def polygon(k: int, r: float = 1.0, phase: float = 0.0) -> list[tuple]:
    return [(r * math.cos(phase + 2 * math.pi * i / k), r * math.sin(phase + 2 * math.pi * i / k)) for i in range(k)]


def cycle(n: int) -> Multigraph:
    """The cycle C_n (n >= 3)."""
    return _from_drawing(n, [(i, (i + 1) % n) for i in range(n)], polygon(n))


def k4() -> Multigraph:
    pos = polygon(3) + [(0.0, 0.0)]
    return _from_drawing(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)], pos)


def prism(k: int) -> Multigraph:
    """Two concentric k-gons joined by spokes; k=4 is the cube Q3."""
    pos = polygon(k, 2.0, 0.3) + polygon(k, 1.0, 0.3)
    pairs = [(i, (i + 1) % k) for i in range(k)]
    pairs += [(k + i, k + (i + 1) % k) for i in range(k)]
    pairs += [(i, k + i) for i in range(k)]
    return _from_drawing(2 * k, pairs, pos)


def triangle_prism() -> Multigraph:
    return prism(3)


def cube() -> Multigraph:
    return prism(4)


def hexagonal_prism() -> Multigraph:
    return prism(6)


def bowtie() -> Multigraph:
    """Two triangles sharing vertex 0."""
    pos = [(0, 0), (-1, 1), (-1, -1), (1, 1), (1, -1)]
    return _from_drawing(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)], pos)


def wheel(k: int) -> Multigraph:
    """Hub 0 joined to a k-cycle."""
    pos = [(0.0, 0.0)] + polygon(k)
    pairs = [(0, i + 1) for i in range(k)] + [(i + 1, (i + 1) % k + 1) for i in range(k)]
    return _from_drawing(k + 1, pairs, pos)


def prism_with_diagonal() -> Multigraph:
    """Triangle prism plus one diagonal of a square face: two vertices of degree 4."""
    g = prism(3)
    pairs = [(e.u, e.v) for e in g.edges] + [(0, 4)]
    pos = polygon(3, 2.0, 0.3) + polygon(3, 1.0, 0.3)
    return _from_drawing(6, pairs, pos)


def random_weights(g: Multigraph, seed: int, choices=None) -> Multigraph:
    rng = random.Random(seed)
    choices = choices or [Fraction(p, q) for p in (-3, -2, -1, 1, 2, 3) for q in (1, 2, 5)]
    return g.with_weights({e.id: rng.choice(choices) for e in g.edges})


def random_subcubic_planar(n: int, seed: int, weighted: bool = True) -> Multigraph:
    """Random straight-line planar graph with maximum degree 3.

    Edges of a Delaunay triangulation of random points are added in random
    order while both ends have degree below 3.
    """
    from scipy.spatial import Delaunay

    rng = random.Random(seed)
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    tri = Delaunay(pts)
    cand = set()
    for simplex in tri.simplices:
        a, b, c = (int(x) for x in simplex)
        for u, v in ((a, b), (b, c), (a, c)):
            cand.add((min(u, v), max(u, v)))
    cand = sorted(cand)
    rng.shuffle(cand)
    deg = [0] * n
    pairs = []
    for u, v in cand:
        if deg[u] < 3 and deg[v] < 3:
            pairs.append((u, v))
            deg[u] += 1
            deg[v] += 1
    g = _from_drawing(n, pairs, pts)
    return random_weights(g, seed) if weighted else g


def fkt_corpus(count: int = 24) -> dict[str, Multigraph]:
    """Planar graphs of maximum degree 3 with at most 16 vertices.

    The random members have weights drawn from small non-zero rationals.
    """
    out = {
        "K4": k4(),
        "triangle-prism": triangle_prism(),
        "cube": cube(),
        "hexagonal-prism": hexagonal_prism(),
        "C3": cycle(3),
        "C4": cycle(4),
        "C5": cycle(5),
        "C6": cycle(6),
        "cube-weighted": random_weights(cube(), 7),
    }
    for i in range(count):
        # skip seeds leaving a vertex of degree < 2, whose permanent is trivially 0
        seed = 100 + i
        g = random_subcubic_planar(6 + i % 11, seed)
        while min(g.degrees()) < 2:
            seed += 1000
            g = random_subcubic_planar(6 + i % 11, seed)
        out[f"random-{i}"] = g
    return out


def cubic_corpus() -> dict[str, Multigraph]:
    """Cubic planar graphs for the determinant side."""
    return {
        "K4": k4(),
        "triangle-prism": triangle_prism(),
        "cube": cube(),
        "pentagonal-prism": prism(5),
        "hexagonal-prism": hexagonal_prism(),
        "cube-half": cube().with_weights({0: Fraction(-1, 2)}),
        "cube-weighted": random_weights(cube(), 11),
        "hexagonal-prism-weighted": random_weights(hexagonal_prism(), 12),
    }


def cnf_corpus() -> list[tuple[tuple[int, int, int], ...]]:
    """3-CNF formulas with at most 3 variables and 2 clauses."""
    return [
        ((1, 1, 1),),
        ((-1, -1, -1),),
        ((1, -1, 1),),
        ((1, 2, 2),),
        ((1, 2, 3),),
        ((-1, 2, 3),),
        ((-1, -2, -3),),
        ((1, 1, 1), (-1, -1, -1)),
        ((1, 2, 3), (-1, -2, -3)),
        ((1, 2, 3), (1, 2, 3)),
        ((1, -2, 3), (-1, 2, -3)),
        ((1, 2, 3), (-1, 2, 3)),
        ((1, 1, 2), (-2, -2, 3)),
        ((-1, -2, -3), (-1, -2, -3)),
        ((1, 2, -3), (3, -1, 2)),
        ((1, 1, 2), (-1, -1, -2)),
        ((2, 2, 2), (1, 3, 3)),
    ]
