"""Exact integer linear algebra: matrices, Smith normal form, saturated kernels.

Everything here runs over arbitrary-precision integers.  The Smith normal
form comes with full unimodular witnesses ``U * A * V == D`` so that every
downstream torsion-freeness verdict can be replayed from the returned data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple


class IntMatrix:
    """Immutable integer matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = tuple(int(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        flat: List[int] = []
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(int(x) for x in r)
        return cls(rows, cols, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, rc: Tuple[int, int]) -> int:
        i, j = rc
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [0] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a == 0:
                    continue
                obase = k * other.cols
                rbase = i * other.cols
                for j in range(other.cols):
                    out[rbase + j] += a * other.entries[obase + j]
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"

    def is_diagonal(self) -> bool:
        return all(
            self[i, j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form ``U * A * V == D`` with unimodular U, V.

    ``invariants`` lists the full diagonal of D (nonzero divisors first,
    then zeros), of length ``min(rows, cols)``.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariants: Tuple[int, ...]

    def verify(self, A: IntMatrix) -> bool:
        if self.U * A * self.V != self.D:
            return False
        if abs(self.U.det()) != 1 or abs(self.V.det()) != 1:
            return False
        if not self.D.is_diagonal():
            return False
        inv = list(self.invariants)
        for a, b in zip(inv, inv[1:]):
            if a == 0 and b != 0:
                return False
            if a != 0 and b % a != 0:
                return False
        return True


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form with transformation witnesses.

    Classical reduction: repeatedly move a minimal nonzero entry to the
    pivot, clear its row and column with exact integer row/column
    operations, and restart the pivot whenever a non-divisible remainder
    shows up.  All operations are mirrored on U (rows) and V (columns),
    so ``U*A*V == D`` holds exactly at every step.
    """
    rows, cols = A.rows, A.cols
    m = A.to_rows()
    U = IntMatrix.identity(rows).to_rows()
    V = IntMatrix.identity(cols).to_rows()

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        mr, ms = m[dst], m[src]
        for k in range(cols):
            mr[k] += c * ms[k]
        ur, us = U[dst], U[src]
        for k in range(rows):
            ur[k] += c * us[k]

    def add_col(src, dst, c):
        for r in m:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        U[i] = [-x for x in U[i]]

    n = min(rows, cols)
    for k in range(n):
        # Find a pivot: smallest nonzero |entry| in the remaining block.
        pivot = None
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                v = m[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != k:
                swap_rows(k, i)
            if j != k:
                swap_cols(k, j)
            if m[k][k] < 0:
                negate_row(k)
            # Clear column k below the pivot.
            dirty = False
            for i in range(k + 1, rows):
                if m[i][k] != 0:
                    q = m[i][k] // m[k][k]
                    add_row(k, i, -q)
                    if m[i][k] != 0:
                        dirty = True
            # Clear row k right of the pivot.
            for j in range(k + 1, cols):
                if m[k][j] != 0:
                    q = m[k][j] // m[k][k]
                    add_col(k, j, -q)
                    if m[k][j] != 0:
                        dirty = True
            if not dirty:
                # Pivot must divide the whole remaining block for the
                # divisibility chain; if not, fold an offender in.
                offender = None
                for i in range(k + 1, rows):
                    for j in range(k + 1, cols):
                        if m[i][j] % m[k][k] != 0:
                            offender = (i, j)
                            break
                    if offender:
                        break
                if offender is None:
                    break
                add_row(offender[0], k, 1)
                pivot = (k, k)
                continue
            # Re-pick the smallest entry and loop.
            pivot = None
            best = None
            for i in range(k, rows):
                for j in range(k, cols):
                    v = m[i][j]
                    if v != 0 and (best is None or abs(v) < best):
                        best = abs(v)
                        pivot = (i, j)

    D = IntMatrix.from_rows(m) if rows else IntMatrix.zero(rows, cols)
    invariants = tuple(m[i][i] for i in range(n)) if n else ()
    result = SnfResult(
        U=IntMatrix.from_rows(U) if rows else IntMatrix.identity(0),
        D=D,
        V=IntMatrix.from_rows(V) if cols else IntMatrix.identity(0),
        invariants=invariants,
    )
    assert result.U * A * result.V == result.D
    return result


def cokernel_invariants(A: IntMatrix) -> List[int]:
    """Elementary divisors of ``coker(A) = Z^rows / A Z^cols``.

    Unit and torsion invariants come first, then one ``0`` per free rank.
    The cokernel is torsion-free iff every nonzero invariant equals 1.
    """
    res = snf(A)
    nonzero = [d for d in res.invariants if d != 0]
    free_rank = A.rows - len(nonzero)
    return nonzero + [0] * free_rank


def saturated_kernel(A: IntMatrix) -> IntMatrix:
    """Basis (as rows) of the right kernel ``{v : A v = 0}``.

    The kernel of an integer matrix is a saturated sublattice, and the
    basis read off the SNF witness V is a lattice basis: with
    ``U*A*V == D`` diagonal, the columns of V indexed by zero diagonal
    entries (and by columns beyond the diagonal) span the kernel.
    """
    res = snf(A)
    n = min(A.rows, A.cols)
    free_cols = [j for j in range(n) if res.invariants[j] == 0]
    free_cols += list(range(n, A.cols))
    basis = [res.V.col(j) for j in free_cols]
    return IntMatrix.from_rows(basis) if basis else IntMatrix.zero(0, A.cols)


def solve_integer(A: IntMatrix, b: Sequence[int]) -> List[int] | None:
    """One integer solution x of ``A x = b``, or None if none exists."""
    if len(b) != A.rows:
        raise ValueError("length mismatch")
    res = snf(A)
    c = [sum(res.U[i, k] * b[k] for k in range(A.rows)) for i in range(A.rows)]
    n = min(A.rows, A.cols)
    y = [0] * A.cols
    for i in range(A.rows):
        d = res.D[i, i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return [sum(res.V[i, k] * y[k] for k in range(A.cols)) for i in range(A.cols)]


def row_stack(top: IntMatrix, bottom: IntMatrix) -> IntMatrix:
    if top.cols != bottom.cols and top.rows and bottom.rows:
        raise ValueError("column mismatch")
    cols = top.cols if top.rows else bottom.cols
    return IntMatrix(top.rows + bottom.rows, cols, top.entries + bottom.entries)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def lattice_membership(basis: IntMatrix, v: Sequence[int]) -> List[int] | None:
    """Coordinates of v in the row lattice of ``basis``, or None."""
    return solve_integer(basis.transpose(), list(v))
