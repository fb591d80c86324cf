"""Exact Pfaffians and the sign of a perfect matching."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DimensionTooLargeForOracle, InputError
from .graph import SkewMatrix

ORACLE_MAX_DIM = 16


def _as_rows(a) -> list[list[Fraction]]:
    if isinstance(a, SkewMatrix):
        return a.tolist()
    return SkewMatrix(a).tolist()


def pfaffian(a) -> Fraction:
    """Pfaffian by skew-symmetric elimination, O(n^3) exact operations.

    Each step pairs the first remaining index with a partner holding a
    nonzero entry, swaps that partner into second place (one sign flip) and
    replaces the trailing block by its Schur complement.
    """
    m = _as_rows(a)
    n = len(m)
    if n % 2:
        return Fraction(0)
    idx = list(range(n))
    result = Fraction(1)
    for k in range(0, n, 2):
        r0 = idx[k]
        piv = next((j for j in range(k + 1, n) if m[r0][idx[j]] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k + 1:
            idx[k + 1], idx[piv] = idx[piv], idx[k + 1]
            result = -result
        r1 = idx[k + 1]
        p = m[r0][r1]
        result *= p
        rest = idx[k + 2:]
        row0 = [m[r0][x] for x in rest]
        row1 = [m[r1][x] for x in rest]
        for s, i in enumerate(rest):
            a1i, a0i = row1[s], row0[s]
            if a1i == 0 and a0i == 0:
                continue
            mi = m[i]
            for t in range(s + 1, len(rest)):
                j = rest[t]
                delta = (a1i * row0[t] - a0i * row1[t]) / p
                if delta:
                    mi[j] += delta
                    m[j][i] -= delta
    return result


def iter_pairings(items: Sequence) -> Iterator[list[tuple]]:
    """All perfect pairings of ``items``; each pair keeps the list order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, x in enumerate(rest):
        for tail in iter_pairings(rest[:i] + rest[i + 1:]):
            yield [(first, x)] + tail


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation taking ``sorted(seq)`` to ``seq``."""
    order = {x: i for i, x in enumerate(sorted(seq))}
    if len(order) != len(seq):
        raise InputError("permutation has repeated entries")
    perm = [order[x] for x in seq]
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def matching_sign(pairs: Sequence[tuple]) -> int:
    """Sign of the permutation ``i1 j1 i2 j2 ...`` for directed pairs ``(i, j)``."""
    return permutation_sign([x for p in pairs for x in p])


def pfaffian_by_definition(a, max_dim: int = ORACLE_MAX_DIM) -> Fraction:
    m = _as_rows(a)
    n = len(m)
    if n > max_dim:
        raise DimensionTooLargeForOracle(f"dimension {n} exceeds oracle bound {max_dim}")
    if n % 2:
        return Fraction(0)
    total = Fraction(0)
    for pairing in iter_pairings(range(n)):
        term = Fraction(1)
        for i, j in pairing:
            term *= m[i][j]
            if not term:
                break
        if term:
            total += matching_sign(pairing) * term
    return total


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    sign, prev = 1, Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else Fraction(1)
