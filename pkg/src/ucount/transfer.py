"""Memoized frontier count of cycle covers.

Edges are processed in a fixed order.  A state records, for every vertex that
has been touched but still has unprocessed edges, its degree in the partial
cover and, for degree-one vertices, the other end of its open path.  States
with equal records are merged by adding their weights, which keeps the count
polynomial in the number of states rather than in the number of covers.
This gives the same sums as enumeration on the large, thin graphs produced by
the reduction compiler, where listing every cover is hopeless.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .graph import Multigraph

FREE, FULL = -1, -2


def vertex_order(g: Multigraph, tries: int = 48) -> list[int]:
    """Greedy elimination order keeping few vertices half-processed at once.

    Two greedy rules are tried from several start vertices and the order
    with the smallest (width, total frontier cost) is kept.
    """
    if g.n == 0:
        return []
    adj = [sorted({g.edges[e].other(v) for e in g.incident(v)} - {v}) for v in g.vertices()]
    step = max(1, g.n // tries)
    starts = sorted(g.vertices(), key=lambda v: (g.degree(v), v))[:4] + list(range(0, g.n, step))
    best, best_cost = None, None
    for s in dict.fromkeys(starts):
        for rule in (_greedy_connected, _greedy_closing):
            order = rule(g, adj, s)
            cost = _cost(adj, order)
            if best_cost is None or cost < best_cost:
                best, best_cost = order, cost
    return best


def _greedy_connected(g: Multigraph, adj, start: int) -> list[int]:
    """Next vertex: the one with most already placed neighbours."""
    placed = [False] * g.n
    order = []
    score = [0] * g.n
    for comp_start in [start] + list(g.vertices()):
        if placed[comp_start]:
            continue
        pending = {comp_start}
        while pending:
            v = max(pending, key=lambda x: (score[x], -len(adj[x]), -x))
            pending.discard(v)
            placed[v] = True
            order.append(v)
            for x in adj[v]:
                if not placed[x]:
                    score[x] += 1
                    pending.add(x)
    return order


def _greedy_closing(g: Multigraph, adj, start: int) -> list[int]:
    """Next vertex: the one that shrinks the frontier the most."""
    placed = [False] * g.n
    left = [len(a) for a in adj]  # unplaced neighbours
    order = []
    for comp_start in [start] + list(g.vertices()):
        if placed[comp_start]:
            continue
        pending = {comp_start}
        while pending:
            def gain(x):
                closes = sum(1 for y in adj[x] if placed[y] and left[y] == 1)
                opens = 1 if left[x] > sum(1 for y in adj[x] if placed[y]) else 0
                return (closes - opens, -x)

            v = max(pending, key=gain)
            pending.discard(v)
            placed[v] = True
            order.append(v)
            for x in adj[v]:
                left[x] -= 1
                if not placed[x]:
                    pending.add(x)
    return order


def _cost(adj, order) -> tuple[int, int]:
    """(maximum frontier size, sum of 3^frontier) along ``order``."""
    placed = [False] * len(adj)
    left = [len(a) for a in adj]
    live = 0
    width, total = 0, 0
    for v in order:
        placed[v] = True
        live += 1
        for x in adj[v]:
            left[x] -= 1
            if placed[x] and left[x] == 0:
                live -= 1
        if left[v] == 0:
            live -= 1
        width = max(width, live + 1)
        total += 3 ** live
    return width, total


def _width(g: Multigraph, order) -> int:
    adj = [sorted({g.edges[e].other(v) for e in g.incident(v)} - {v}) for v in g.vertices()]
    return _cost(adj, order)[0]


def frontier_count(g: Multigraph, signed: bool) -> Fraction:
    """``udet`` (``signed=True``) or ``uperm`` of ``g``.

    Weights are scaled to integers by a common denominator ``D``; every
    cover has exactly ``n`` edges, so the sum is divided by ``D^n`` at the end.
    """
    if any(g.degree(v) < 2 for v in g.vertices()):
        return Fraction(0)
    order = vertex_order(g)
    pos = {v: i for i, v in enumerate(order)}
    edges = sorted(g.edges, key=lambda e: (max(pos[e.u], pos[e.v]), min(pos[e.u], pos[e.v]), e.id))
    den = math.lcm(*(e.w.denominator for e in g.edges)) if g.edges else 1
    remaining = [g.degree(v) for v in g.vertices()]
    slot: dict[int, int] = {}
    front: list[int] = []
    states: dict = {(): 1}
    for e in edges:
        a, b = e.u, e.v
        for x in (a, b):
            if x not in slot:
                slot[x] = len(front)
                front.append(x)
                states = {k + (FREE,): w for k, w in states.items()}
        remaining[a] -= 1
        remaining[b] -= 1
        ia, ib = slot[a], slot[b]
        w_e = int(e.w * den)
        nxt: dict = {}
        for st, w in states.items():
            nxt[st] = nxt.get(st, 0) + w
            new = _take(st, ia, ib, a, b, slot)
            if new is not None:
                key, closed = new
                w2 = w * w_e
                if signed and closed:
                    w2 = -w2
                nxt[key] = nxt.get(key, 0) + w2
        retire = sorted({slot[x] for x in (a, b) if remaining[x] == 0})
        if retire:
            keep = [i for i in range(len(front)) if i not in retire]
            states = {}
            for st, w in nxt.items():
                if all(st[i] == FULL for i in retire):
                    key = tuple(st[i] for i in keep)
                    states[key] = states.get(key, 0) + w
            front = [front[i] for i in keep]
            slot = {v: i for i, v in enumerate(front)}
        else:
            states = nxt
        states = {k: w for k, w in states.items() if w}
        if not states:
            return Fraction(0)
    total = Fraction(states.get((), 0), den ** g.n)
    if signed and g.n % 2:
        total = -total
    return total


def _take(st: tuple, ia: int, ib: int, va: int, vb: int, slot: dict):
    """State after adding the edge between slots ``ia``, ``ib``, or ``None``.

    A slot holds FREE, FULL or the vertex at the other end of its open path.
    """
    ca, cb = st[ia], st[ib]
    if ia == ib:
        if ca != FREE:
            return None
        s = list(st)
        s[ia] = FULL
        return tuple(s), True
    if ca == FULL or cb == FULL:
        return None
    s = list(st)
    if ca == FREE and cb == FREE:
        s[ia], s[ib] = vb, va
        return tuple(s), False
    if ca == FREE:
        s[ia], s[ib], s[slot[cb]] = cb, FULL, va
        return tuple(s), False
    if cb == FREE:
        s[ib], s[ia], s[slot[ca]] = ca, FULL, vb
        return tuple(s), False
    s[ia], s[ib] = FULL, FULL
    if ca == vb:
        return tuple(s), True
    s[slot[ca]], s[slot[cb]] = cb, ca
    return tuple(s), False
