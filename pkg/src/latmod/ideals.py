"""Polynomial ideals: Groebner bases, membership, dimension, saturation, minors.

A PolyIdeal pairs a generator list with a monomial order tag and caches
its reduced Groebner basis in the packed kernel representation.  All
operations are exact; the only failure mode is the configurable
pair-queue resource guard.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import kernel
from .packing import Packing, get_packing
from .poly import MultiPoly, PolyRing

DEFAULT_PAIR_LIMIT = 100_000

Order = object  # "grevlex" | "lex" | ("block", k)


def poly_to_terms(f: MultiPoly, pk: Packing) -> List[Tuple[int, int]]:
    """Packed integer terms of f; over QQ denominators are cleared."""
    p = f.ring.field.p
    if p:
        terms = [(pk.pack(e), int(c) % p) for e, c in f.terms.items()]
    else:
        den = 1
        for c in f.terms.values():
            den = lcm(den, Fraction(c).denominator)
        terms = [(pk.pack(e), int(c * den)) for e, c in f.terms.items()]
    terms = [(k, c) for k, c in terms if c]
    terms.sort(reverse=True)
    return terms


def terms_to_poly(
    terms: Sequence[Tuple[int, int]],
    ring: PolyRing,
    pk: Packing,
    scale: Fraction = Fraction(1),
) -> MultiPoly:
    f = ring.field
    if f.p:
        return MultiPoly(ring, {pk.unpack(k): c % f.p for k, c in terms})
    return MultiPoly(ring, {pk.unpack(k): Fraction(c) * scale for k, c in terms})


class PolyIdeal:
    """Ideal with generators, a monomial order tag and a Groebner cache."""

    __slots__ = ("ring", "generators", "order", "pair_limit", "_kernel_gb", "_pk")

    def __init__(
        self,
        ring: PolyRing,
        generators: Iterable[MultiPoly],
        order: Order = "grevlex",
        pair_limit: int = DEFAULT_PAIR_LIMIT,
    ):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator outside the ideal's ring")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.order = order
        self.pair_limit = pair_limit
        self._kernel_gb: Optional[List[List[Tuple[int, int]]]] = None
        self._pk: Optional[Packing] = None

    # -- kernel plumbing ----------------------------------------------------
    @property
    def packing(self) -> Packing:
        if self._pk is None:
            self._pk = get_packing(self.ring.nvars, self.order)
        return self._pk

    def kernel_basis(self) -> List[List[Tuple[int, int]]]:
        if self._kernel_gb is None:
            pk = self.packing
            gens = [poly_to_terms(g, pk) for g in self.generators]
            self._kernel_gb = kernel.buchberger(
                gens, pk, self.ring.field.p, self.pair_limit
            )
        return self._kernel_gb

    def _set_kernel_basis(self, basis) -> None:
        self._kernel_gb = basis

    # -- public surface -------------------------------------------------------
    def groebner_basis(self) -> List[MultiPoly]:
        """Reduced, monic Groebner basis."""
        pk = self.packing
        out = []
        for g in self.kernel_basis():
            if self.ring.field.p:
                out.append(terms_to_poly(g, self.ring, pk))
            else:
                out.append(terms_to_poly(g, self.ring, pk, Fraction(1, g[0][1])))
        return out

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        """Exact remainder of f modulo the reduced basis."""
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        pk = self.packing
        p = self.ring.field.p
        basis = self.kernel_basis()
        if p:
            terms = poly_to_terms(f, pk)
            r, _, _ = kernel.nf(terms, basis, pk, p)
            return terms_to_poly(r, self.ring, pk)
        den = 1
        for c in f.terms.values():
            den = lcm(den, Fraction(c).denominator)
        terms = [(pk.pack(e), int(c * den)) for e, c in f.terms.items()]
        terms.sort(reverse=True)
        r, num, dnm = kernel.nf(terms, basis, pk, 0)
        return terms_to_poly(r, self.ring, pk, Fraction(dnm, num * den))

    def contains(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "PolyIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyIdeal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        a = self.with_order("grevlex").groebner_basis()
        b = other.with_order("grevlex").groebner_basis()
        return a == b

    def __hash__(self):
        raise TypeError("PolyIdeal is not hashable")

    def with_order(self, order: Order) -> "PolyIdeal":
        if order == self.order:
            return self
        return PolyIdeal(self.ring, self.generators, order, self.pair_limit)

    def plus(self, extra: Iterable[MultiPoly]) -> "PolyIdeal":
        return PolyIdeal(
            self.ring,
            list(self.generators) + list(extra),
            self.order,
            self.pair_limit,
        )


def groebner(I: PolyIdeal) -> PolyIdeal:
    """Same ideal with the reduced basis computed and cached as generators."""
    basis = I.groebner_basis()
    out = PolyIdeal(I.ring, basis, I.order, I.pair_limit)
    out._set_kernel_basis(I.kernel_basis())
    return out


def ideal_contains_one(I: PolyIdeal) -> bool:
    basis = I.kernel_basis()
    return len(basis) == 1 and basis[0][0][0] == I.packing.one


def dimension(I: PolyIdeal) -> int:
    """Krull dimension of the affine vanishing set; -1 for the unit ideal.

    Computed as the largest set of variables independent modulo the
    leading-term ideal of the reduced basis (valid for any global order).
    """
    if ideal_contains_one(I):
        return -1
    pk = I.packing
    basis = I.kernel_basis()
    nvars = I.ring.nvars
    supports = []
    for g in basis:
        e = pk.unpack(g[0][0])
        supports.append(frozenset(i for i, x in enumerate(e) if x))
    supports = sorted(set(supports), key=lambda s: (len(s), sorted(s)))
    memo: Dict[frozenset, int] = {}

    def best_independent(alive: frozenset) -> int:
        live = [s for s in supports if s <= alive]
        if not live:
            return len(alive)
        cached = memo.get(alive)
        if cached is not None:
            return cached
        pivot = min(live, key=len)
        best = -1
        for v in sorted(pivot):
            r = best_independent(alive - {v})
            if r > best:
                best = r
        memo[alive] = best
        return best

    return best_independent(frozenset(range(nvars)))


def _fresh_name(ring: PolyRing, base: str) -> str:
    if base not in ring.index:
        return base
    i = 0
    while f"{base}{i}" in ring.index:
        i += 1
    return f"{base}{i}"


def saturate(I: PolyIdeal, f: MultiPoly, pair_limit: Optional[int] = None) -> PolyIdeal:
    """Saturation (I : f^infinity) via the inverse-variable elimination trick."""
    if f.ring != I.ring:
        raise ValueError("ring mismatch")
    ring = I.ring
    aux = _fresh_name(ring, "ysat")
    ext = PolyRing(ring.field, (aux,) + ring.names)
    gens = [g.map_ring(ext) for g in I.generators]
    gens.append(ext.var(aux) * f.map_ring(ext) - ext.one)
    limit = pair_limit if pair_limit is not None else I.pair_limit
    J = PolyIdeal(ext, gens, ("block", 1), limit)
    contracted = []
    for g in J.groebner_basis():
        if g.degree_in(aux) <= 0:
            terms = {e[1:]: c for e, c in g.terms.items()}
            contracted.append(MultiPoly(ring, terms))
    out = PolyIdeal(ring, contracted, "grevlex", I.pair_limit)
    # The aux-free part of the block-order reduced basis is already the
    # reduced grevlex basis of the contraction.
    pk = out.packing
    out._set_kernel_basis([poly_to_terms(g, pk) for g in contracted])
    return out


def minors(M: Sequence[Sequence[MultiPoly]], k: int) -> List[MultiPoly]:
    """All k x k minors in lexicographic (row-subset, col-subset) order."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if k < 0 or (rows and k > min(rows, cols)) or (not rows and k > 0):
        raise ValueError("minor size out of range")
    ring = M[0][0].ring if rows and cols else None
    if k == 0:
        if ring is None:
            raise ValueError("cannot build the empty minor without a ring")
        return [ring.one]
    from itertools import combinations

    memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], MultiPoly] = {}

    def det(rs: Tuple[int, ...], cs: Tuple[int, ...]) -> MultiPoly:
        if len(rs) == 1:
            return M[rs[0]][cs[0]]
        key = (rs, cs)
        v = memo.get(key)
        if v is not None:
            return v
        acc = ring.zero
        r0 = rs[0]
        rest = rs[1:]
        for idx, c in enumerate(cs):
            entry = M[r0][c]
            if entry.is_zero():
                continue
            sub = det(rest, cs[:idx] + cs[idx + 1 :])
            term = entry * sub
            acc = acc + term if idx % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    out = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            out.append(det(rs, cs))
    return out


def jacobian(gens: Sequence[MultiPoly], names: Sequence[str]) -> List[List[MultiPoly]]:
    """Formal Jacobian matrix: entry (i, j) = d gens[i] / d names[j]."""
    if not gens:
        return []
    ring = gens[0].ring
    for n in names:
        if n not in ring.index:
            raise ValueError(f"unknown variable {n!r}")
    return [[g.diff(n) for n in names] for g in gens]
