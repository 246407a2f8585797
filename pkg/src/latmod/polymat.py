"""Small helpers for matrices with polynomial entries."""

from __future__ import annotations

from typing import List, Sequence

from .poly import MultiPoly, PolyRing


def zeros(ring: PolyRing, rows: int, cols: int) -> List[List[MultiPoly]]:
    return [[ring.zero for _ in range(cols)] for _ in range(rows)]


def identity(ring: PolyRing, n: int, scale: MultiPoly | None = None) -> List[List[MultiPoly]]:
    s = scale if scale is not None else ring.one
    return [[s if i == j else ring.zero for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[MultiPoly]], B: Sequence[Sequence[MultiPoly]]):
    n, k, m = len(A), len(B), len(B[0])
    ring = A[0][0].ring
    out = zeros(ring, n, m)
    for i in range(n):
        for l in range(k):
            a = A[i][l]
            if a.is_zero():
                continue
            for j in range(m):
                b = B[l][j]
                if not b.is_zero():
                    out[i][j] = out[i][j] + a * b
    return out


def matsub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def entries(A) -> List[MultiPoly]:
    return [x for row in A for x in row]


def map_entries(A, fn):
    return [[fn(x) for x in row] for row in A]


def hstack(A, B):
    return [list(ra) + list(rb) for ra, rb in zip(A, B)]
