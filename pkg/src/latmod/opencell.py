"""Symbolic open-cell substitution into the cyclic-product ideal.

The open cell sends group data (g_0..g_N, lambda) to
Pi_i = (lam_pi_i / lam_delta_i) g_i g_{i+1}^{-1} and t = prod of ratios.
Here the substitution is carried out with fully symbolic g entries and
lambda values, using adjugates and auxiliary inverses; every generator
of the cyclic-product ideal must reduce to zero modulo the inverse
relations, and the ratios are invariant under rescaling lambda_pi and
lambda_delta by a common unit.
"""

from __future__ import annotations

from typing import Dict, List

from . import polymat
from .chains import ParabolicShape
from .ideals import PolyIdeal, minors
from .poly import Field, MultiPoly, PolyRing, QQ
from .schemes import mu_ideal


def _adjugate(M, ring: PolyRing):
    n = len(M)
    if n == 1:
        return [[ring.one]]
    out = polymat.zeros(ring, n, n)
    for i in range(n):
        for j in range(n):
            rows = tuple(k for k in range(n) if k != j)
            cols = tuple(k for k in range(n) if k != i)
            sub = [[M[a][b] for b in cols] for a in rows]
            m = minors(sub, n - 1)[0]
            out[i][j] = m if (i + j) % 2 == 0 else -m
    return out


def _parabolic_inverse(g, ring: PolyRing, r: int, ua: MultiPoly, uc: MultiPoly):
    """Inverse of a block upper-triangular matrix via adjugates.

    With g = [[A, B], [0, C]]:  g^{-1} = [[A^{-1}, -A^{-1} B C^{-1}],
    [0, C^{-1}]], and A^{-1} = adj(A) * ua, C^{-1} = adj(C) * uc where
    ua, uc are the auxiliary inverses of det A, det C.
    """
    n = len(g)
    A = [row[:r] for row in g[:r]]
    B = [row[r:] for row in g[:r]]
    C = [row[r:] for row in g[r:]]
    Ainv = polymat.map_entries(_adjugate(A, ring), lambda x: x * ua)
    Cinv = polymat.map_entries(_adjugate(C, ring), lambda x: x * uc)
    topright = polymat.map_entries(
        polymat.matmul(polymat.matmul(Ainv, B), Cinv), lambda x: -x
    )
    out = polymat.zeros(ring, n, n)
    for i in range(r):
        for j in range(r):
            out[i][j] = Ainv[i][j]
        for j in range(n - r):
            out[i][r + j] = topright[i][j]
    for i in range(n - r):
        for j in range(n - r):
            out[r + i][r + j] = Cinv[i][j]
    return out


class OpenCellSymbols:
    """Symbolic open-cell data for (n, r, N) plus the relation ideal."""

    def __init__(self, n: int, r: int, N: int, field: Field = QQ):
        self.n, self.r, self.N = n, r, N
        shape = ParabolicShape(n, r)
        names: List[str] = []
        for i in range(N + 1):
            for a, b in shape.positions():
                names.append(f"g{i}_{a + 1}_{b + 1}")
        for i in range(N + 1):
            names.extend([f"lp{i}", f"ld{i}"])
        for i in range(N + 1):
            names.extend([f"ua{i}", f"uc{i}", f"uld{i}"])
        names.extend(["s", "us"])  # spare unit for the rescaling check
        self.ring = PolyRing(field, names)
        ring = self.ring
        self.shape = shape
        self.g = []
        for i in range(N + 1):
            m = polymat.zeros(ring, n, n)
            for a, b in shape.positions():
                m[a][b] = ring.var(f"g{i}_{a + 1}_{b + 1}")
            self.g.append(m)
        rels: List[MultiPoly] = []
        self.ginv = []
        for i in range(N + 1):
            A = [row[:r] for row in self.g[i][:r]]
            C = [row[r:] for row in self.g[i][r:]]
            detA = minors(A, r)[0]
            detC = minors(C, n - r)[0]
            ua = ring.var(f"ua{i}")
            uc = ring.var(f"uc{i}")
            rels.append(ua * detA - 1)
            rels.append(uc * detC - 1)
            rels.append(ring.var(f"uld{i}") * ring.var(f"ld{i}") - 1)
            self.ginv.append(_parabolic_inverse(self.g[i], ring, r, ua, uc))
        rels.append(ring.var("us") * ring.var("s") - 1)
        self.relations = PolyIdeal(ring, rels)

    def pi_matrices(self, scale_slot: int | None = None):
        """The substituted matrices; optionally rescale one slot's lambda
        pair by the spare unit s."""
        ring = self.ring
        out = []
        for i in range(self.N + 1):
            lp = ring.var(f"lp{i}")
            uld = ring.var(f"uld{i}")
            ratio_num = lp
            ratio_inv = uld
            if scale_slot == i:
                # (s * lp) / (s * ld): inverse of s*ld is us * uld
                ratio_num = ring.var("s") * lp
                ratio_inv = ring.var("us") * uld
            m = polymat.matmul(self.g[i], self.ginv[(i + 1) % (self.N + 1)])
            out.append(
                polymat.map_entries(m, lambda x: x * ratio_num * ratio_inv)
            )
        return out

    def t_value(self, scale_slot: int | None = None) -> MultiPoly:
        ring = self.ring
        t = ring.one
        for i in range(self.N + 1):
            t = t * ring.var(f"lp{i}") * ring.var(f"uld{i}")
            if scale_slot == i:
                t = t * ring.var("s") * ring.var("us")
        return t


def open_cell_factors_through_mu(n: int, r: int, N: int) -> bool:
    """Every cyclic-product generator vanishes identically under the
    symbolic open-cell substitution (modulo the inverse relations)."""
    sym = OpenCellSymbols(n, r, N)
    mu = mu_ideal(n, r, N)
    Pi = sym.pi_matrices()
    t = sym.t_value()
    mapping: Dict[str, MultiPoly] = {"t": t}
    for i in range(N + 1):
        for a, b in sym.shape.positions():
            mapping[f"Pi{i}_{a + 1}_{b + 1}"] = Pi[i][a][b]
    for gen in mu.generators:
        image = gen.subs(mapping)
        if not sym.relations.normal_form(image).is_zero():
            return False
    return True


def open_cell_ratio_invariance(n: int, r: int, N: int) -> bool:
    """Rescaling lambda_pi_i and lambda_delta_i by a common unit leaves
    both the matrices and t unchanged, identically."""
    sym = OpenCellSymbols(n, r, N)
    base_pi = sym.pi_matrices()
    base_t = sym.t_value()
    for slot in range(N + 1):
        scaled_pi = sym.pi_matrices(scale_slot=slot)
        scaled_t = sym.t_value(scale_slot=slot)
        for m0, m1 in zip(base_pi, scaled_pi):
            for e0, e1 in zip(polymat.entries(m0), polymat.entries(m1)):
                if not sym.relations.normal_form(e0 - e1).is_zero():
                    return False
        if not sym.relations.normal_form(base_t - scaled_t).is_zero():
            return False
    return True
