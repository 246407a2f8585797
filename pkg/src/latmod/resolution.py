"""Blowup charts, t-torsion killing, and the symplectic fiber census.

The census follows the diagonalized setting: the last matrix and the
long product have diagonal blocks diag(a_0, a_0 a_1, ...) and
diag(a_1...a_g, ..., a_g) with a_0 ... a_g = t, and the pairing unknowns
satisfy three families of torsion-killed relations.  Eliminating in the
stated order leaves g(3g-1)/2 free coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import polymat
from .chart import ChartIdeal
from .ideals import PolyIdeal, minors, saturate
from .poly import Field, MultiPoly, PolyRing, QQ


@dataclass(frozen=True)
class BlowupChart:
    """One standard chart of a blowup, already saturated."""

    base: ChartIdeal
    center: Tuple[MultiPoly, ...]
    chart_index: int
    ratio_vars: Tuple[str, ...]
    chart: ChartIdeal
    empty: bool

    def pulled_back_center_principal(self) -> bool:
        """Certificate that the pulled-back center is generated by the
        chart element: every center generator reduces into (f_k)."""
        if self.empty:
            return True
        ring = self.chart.ring
        ideal = self.chart.ideal
        fk = self.center[self.chart_index].map_ring(ring)
        ext_gens = list(ideal.generators)
        # f_j in (f_k) modulo the chart ideal <=> f_j reduces to 0 modulo
        # the ideal + the graph relation u*f_k with fresh u eliminated;
        # here the ratio relations f_j - u_j f_k are already present, so
        # membership is immediate.
        for j, f in enumerate(self.center):
            if j == self.chart_index:
                continue
            u = ring.var(self.ratio_vars[j])
            if not ideal.contains(f.map_ring(ring) - u * fk):
                return False
        return True


def blowup_chart(
    base: ChartIdeal,
    center: Sequence[MultiPoly],
    k: int,
    pair_limit: Optional[int] = None,
) -> BlowupChart:
    """k-th standard chart of the blowup of V(base) along ``center``.

    Adds ratio variables u_j with relations f_j - u_j f_k (j != k), then
    saturates by f_k.  A unit result flags an empty chart (reported, not
    an error).
    """
    center = list(center)
    if not 0 <= k < len(center):
        raise ValueError("chart index out of range")
    ring = base.ring
    for f in center:
        if f.ring != ring:
            raise ValueError("center generators must live in the base ring")
    ratio_names = []
    fresh = 0
    for j in range(len(center)):
        if j == k:
            ratio_names.append("")
            continue
        while f"u{fresh}" in ring.index or f"u{fresh}" in ratio_names:
            fresh += 1
        ratio_names.append(f"u{fresh}")
        fresh += 1
    ext = ring.extend([nm for nm in ratio_names if nm])
    gens = [g.map_ring(ext) for g in base.generators]
    fk = center[k].map_ring(ext)
    for j, f in enumerate(center):
        if j == k:
            continue
        gens.append(f.map_ring(ext) - ext.var(ratio_names[j]) * fk)
    raw = PolyIdeal(ext, gens)
    if pair_limit is not None:
        raw = PolyIdeal(ext, gens, pair_limit=pair_limit)
    saturated = saturate(raw, fk)
    from .ideals import ideal_contains_one

    empty = ideal_contains_one(saturated)
    chart = ChartIdeal(
        ideal=saturated,
        provenance=f"{base.provenance};blowup(chart={k})",
        inverses=base.inverses,
        meta=dict(base.meta, blowup_chart=k),
    )
    return BlowupChart(
        base=base,
        center=tuple(center),
        chart_index=k,
        ratio_vars=tuple(ratio_names),
        chart=chart,
        empty=empty,
    )


def kill_t_torsion(chart: ChartIdeal) -> ChartIdeal:
    """Saturation by t: the quotient by all sections killed by a t-power."""
    ring = chart.ring
    if "t" not in ring.index:
        raise ValueError("chart has no t in its dictionary")
    sat = saturate(chart.ideal, ring.var("t"))
    return ChartIdeal(
        ideal=sat,
        provenance=f"{chart.provenance};kill_t_torsion",
        inverses=chart.inverses,
        meta=dict(chart.meta, t_torsion_killed=True),
    )


# -- the diagonal chart ----------------------------------------------------------

@dataclass(frozen=True)
class DiagonalChartData:
    """Diagonalized end matrices over Z[a_0..a_g, t]/(a_0...a_g - t)."""

    g: int
    ring: PolyRing
    A: Tuple[MultiPoly, ...]
    Aprime: Tuple[MultiPoly, ...]
    relation: MultiPoly

    def pi_matrices(self):
        g = self.g
        ring = self.ring
        PiN = polymat.zeros(ring, 2 * g, 2 * g)
        PiNp = polymat.zeros(ring, 2 * g, 2 * g)
        for i in range(g):
            PiN[i][i] = self.A[i]
            PiN[i][g + i] = ring.one
            PiN[g + i][g + i] = -self.Aprime[i]
            PiNp[i][i] = self.Aprime[i]
            PiNp[i][g + i] = ring.one
            PiNp[g + i][g + i] = -self.A[i]
        return PiN, PiNp

    def product_identities_hold(self) -> bool:
        """Pi_N Pi'_N = Pi'_N Pi_N = t Id modulo a_0...a_g = t, exactly."""
        ring = self.ring
        g2 = 2 * self.g
        PiN, PiNp = self.pi_matrices()
        tid = polymat.identity(ring, g2, ring.var("t"))
        rel = PolyIdeal(ring, [self.relation])
        for prod in (polymat.matmul(PiN, PiNp), polymat.matmul(PiNp, PiN)):
            for e in polymat.entries(polymat.matsub(prod, tid)):
                if not rel.normal_form(e).is_zero():
                    return False
        return True

    def minor_ideal_monomial_generator(self, size: int) -> MultiPoly:
        """The minimal minor of diag(A): a_0^size a_1^{size-1} ... a_{size-1}."""
        ring = self.ring
        out = ring.one
        for k in range(size):
            out = out * self.A[k]
        return out

    def minors_are_principal(self, size: int) -> bool:
        """Every size-minor of diag(A) is a monomial multiple of the minimal
        one (the already-blown-up state of the minors ideals)."""
        ring = self.ring
        g = self.g
        Amat = polymat.zeros(ring, g, g)
        for i in range(g):
            Amat[i][i] = self.A[i]
        gen = self.minor_ideal_monomial_generator(size)
        gen_exp = next(iter(gen.terms))
        for m in minors(Amat, size):
            if m.is_zero():
                continue
            for e in m.terms:
                if any(x < y for x, y in zip(e, gen_exp)):
                    return False
        return True


def diagonal_chart_ideals(g: int, field: Field = QQ) -> DiagonalChartData:
    if g < 1:
        raise ValueError("need g >= 1")
    names = [f"a{i}" for i in range(g + 1)] + ["t"]
    ring = PolyRing(field, names)
    avars = [ring.var(f"a{i}") for i in range(g + 1)]
    A = []
    for i in range(g):
        m = ring.one
        for k in range(i + 1):
            m = m * avars[k]
        A.append(m)
    Ap = []
    for i in range(g):
        m = ring.one
        for k in range(i + 1, g + 1):
            m = m * avars[k]
        Ap.append(m)
    rel = ring.one
    for v in avars:
        rel = rel * v
    rel = rel - ring.var("t")
    return DiagonalChartData(
        g=g, ring=ring, A=tuple(A), Aprime=tuple(Ap), relation=rel
    )


# -- the fiber census --------------------------------------------------------------

@dataclass(frozen=True)
class RelationLogEntry:
    family: int
    i: int
    j: int
    action: str  # "eliminated" or "redundant"
    variable: str = ""


@dataclass(frozen=True)
class FiberCensus:
    g: int
    free_count: int
    free_variables: Tuple[str, ...]
    log: Tuple[RelationLogEntry, ...]

    def consumed(self) -> int:
        return len(self.log)

    def family_counts(self) -> Dict[int, int]:
        out: Dict[int, int] = {1: 0, 2: 0, 3: 0}
        for e in self.log:
            out[e.family] += 1
        return out


def _a_monomial(ring: PolyRing, lo: int, hi: int) -> MultiPoly:
    """a_lo * a_{lo+1} * ... * a_{hi-1} (empty product = 1)."""
    out = ring.one
    for k in range(lo, hi):
        out = out * ring.var(f"a{k}")
    return out


def sigma_fiber_freecount(g: int, field: Field = QQ) -> FiberCensus:
    """Free-coordinate census of the pairing unknowns over the diagonal chart.

    Builds the three torsion-killed relation families in the unknowns
    J1[0], J1[N], J3[0], J3[N] and eliminates by ordered substitution:
    J1[0] (i <= j) via family 1, J1[N] (i > j) via family 2, J1[0]
    (i > j) via family 3.  Remaining free: J1[N] (i <= j), J3[0] (i < j),
    J3[N] (i < j); relations not used for elimination must reduce to 0
    and are logged as redundant.
    """
    if g < 1:
        raise ValueError("need g >= 1")
    names = [f"a{i}" for i in range(g + 1)]
    jnames: List[str] = []
    for tag in ("J0_1", "JN_1"):
        for i in range(1, g + 1):
            for j in range(1, g + 1):
                jnames.append(f"{tag}_{i}_{j}")
    for tag in ("J0_3", "JN_3"):
        for i in range(1, g + 1):
            for j in range(i + 1, g + 1):
                jnames.append(f"{tag}_{i}_{j}")
    ring = PolyRing(field, names + jnames)

    def j3(tag: str, i: int, j: int) -> MultiPoly:
        # antisymmetric with zero diagonal
        if i == j:
            return ring.zero
        if i < j:
            return ring.var(f"{tag}_{i}_{j}")
        return -ring.var(f"{tag}_{j}_{i}")

    # relation polynomials, by family
    def fam1(i: int, j: int) -> MultiPoly:
        # J1[0]^i_j + a_i...a_{j-1} J1[N]^i_j = 0   (i <= j)
        return ring.var(f"J0_1_{i}_{j}") + _a_monomial(ring, i, j) * ring.var(
            f"JN_1_{i}_{j}"
        )

    def fam2(i: int, j: int) -> MultiPoly:
        # J1[N]^i_j + a_j...a_{i-1} J1[0]^i_j = 0   (j <= i)
        return ring.var(f"JN_1_{i}_{j}") + _a_monomial(ring, j, i) * ring.var(
            f"J0_1_{i}_{j}"
        )

    def fam3(i: int, j: int) -> MultiPoly:
        # J1[N]^i_j + J1[0]^j_i - a_0...a_{i-1} J3[N]^i_j
        #   + a_j...a_g J3[0]^i_j = 0   (i <= j)
        return (
            ring.var(f"JN_1_{i}_{j}")
            + ring.var(f"J0_1_{j}_{i}")
            - _a_monomial(ring, 0, i) * j3("JN_3", i, j)
            + _a_monomial(ring, j, g + 1) * j3("J0_3", i, j)
        )

    subs: Dict[str, MultiPoly] = {}
    log: List[RelationLogEntry] = []

    def reduce_expr(f: MultiPoly) -> MultiPoly:
        mapping = {name: subs[name] for name in f.support_vars() if name in subs}
        while mapping:
            f = f.subs(mapping)
            mapping = {
                name: subs[name] for name in f.support_vars() if name in subs
            }
        return f

    # family 1 eliminates J1[0] on the closed upper triangle
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            rel = fam1(i, j)
            var = f"J0_1_{i}_{j}"
            subs[var] = ring.var(var) - rel  # solve: coefficient of var is 1
            log.append(RelationLogEntry(1, i, j, "eliminated", var))
    # family 2: strict lower eliminates J1[N]; diagonal is redundant
    for i in range(1, g + 1):
        for j in range(1, i + 1):
            rel = fam2(i, j)
            if j < i:
                var = f"JN_1_{i}_{j}"
                subs[var] = ring.var(var) - rel
                log.append(RelationLogEntry(2, i, j, "eliminated", var))
            else:
                if not reduce_expr(rel).is_zero():
                    raise AssertionError(f"family 2 diagonal ({i},{j}) not redundant")
                log.append(RelationLogEntry(2, i, j, "redundant"))
    # family 3: strict upper eliminates J1[0] below the diagonal
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            rel = fam3(i, j)
            if i < j:
                var = f"J0_1_{j}_{i}"
                solved = ring.var(var) - rel
                subs[var] = reduce_expr(solved)
                log.append(RelationLogEntry(3, i, j, "eliminated", var))
            else:
                if not reduce_expr(rel).is_zero():
                    raise AssertionError(f"family 3 diagonal ({i},{i}) not redundant")
                log.append(RelationLogEntry(3, i, j, "redundant"))
    # flatten substitutions and re-verify every relation reduces to zero
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            if not reduce_expr(fam1(i, j)).is_zero():
                raise AssertionError(f"family 1 ({i},{j}) failed to reduce")
    for i in range(1, g + 1):
        for j in range(1, i + 1):
            if not reduce_expr(fam2(i, j)).is_zero():
                raise AssertionError(f"family 2 ({i},{j}) failed to reduce")
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            if not reduce_expr(fam3(i, j)).is_zero():
                raise AssertionError(f"family 3 ({i},{j}) failed to reduce")
    free = [
        f"JN_1_{i}_{j}" for i in range(1, g + 1) for j in range(i, g + 1)
    ]
    free += [f"J0_3_{i}_{j}" for i in range(1, g + 1) for j in range(i + 1, g + 1)]
    free += [f"JN_3_{i}_{j}" for i in range(1, g + 1) for j in range(i + 1, g + 1)]
    for name in free:
        if name in subs:
            raise AssertionError(f"free coordinate {name} was eliminated")
    return FiberCensus(
        g=g,
        free_count=len(free),
        free_variables=tuple(free),
        log=tuple(log),
    )


def census_groebner_crosscheck(g: int) -> bool:
    """Ideal-level check that ordered substitution matched the relations.

    The substitution graph {var - expr} has pairwise coprime linear
    leads, hence is a Groebner basis; the relation ideal (with the a_i
    inverted, as on the Laurent chart) must contain every graph
    polynomial and vice versa.
    """
    return _census_crosscheck_impl(g)


def _census_crosscheck_impl(g: int) -> bool:
    from .ideals import PolyIdeal

    field = QQ
    names = [f"a{i}" for i in range(g + 1)]
    jnames: List[str] = []
    for tag in ("J0_1", "JN_1"):
        for i in range(1, g + 1):
            for j in range(1, g + 1):
                jnames.append(f"{tag}_{i}_{j}")
    for tag in ("J0_3", "JN_3"):
        for i in range(1, g + 1):
            for j in range(i + 1, g + 1):
                jnames.append(f"{tag}_{i}_{j}")
    inv_names = [f"ainv{i}" for i in range(g + 1)]
    ring = PolyRing(field, jnames + names + inv_names)

    def j3(tag, i, j):
        if i == j:
            return ring.zero
        if i < j:
            return ring.var(f"{tag}_{i}_{j}")
        return -ring.var(f"{tag}_{j}_{i}")

    def amon(lo, hi):
        out = ring.one
        for k in range(lo, hi):
            out = out * ring.var(f"a{k}")
        return out

    rels = []
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            rels.append(
                ring.var(f"J0_1_{i}_{j}") + amon(i, j) * ring.var(f"JN_1_{i}_{j}")
            )
    for i in range(1, g + 1):
        for j in range(1, i + 1):
            rels.append(
                ring.var(f"JN_1_{i}_{j}") + amon(j, i) * ring.var(f"J0_1_{i}_{j}")
            )
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            rels.append(
                ring.var(f"JN_1_{i}_{j}")
                + ring.var(f"J0_1_{j}_{i}")
                - amon(0, i) * j3("JN_3", i, j)
                + amon(j, g + 1) * j3("J0_3", i, j)
            )
    laurent = [
        ring.var(f"ainv{i}") * ring.var(f"a{i}") - 1 for i in range(g + 1)
    ]
    relation_ideal = PolyIdeal(ring, rels + laurent)
    # substitution graph, mapped into the big ring
    graph = []
    subs_ring_names = [f"a{i}" for i in range(g + 1)] + jnames
    subs_ring = PolyRing(field, subs_ring_names)
    # rebuild the substitutions by re-running the census machinery
    census_data = _census_substitutions(g, subs_ring)
    for var, expr in census_data.items():
        graph.append(ring.var(var) - expr.map_ring(ring))
    graph_ideal = PolyIdeal(ring, graph + laurent)
    for f in graph:
        if not relation_ideal.contains(f):
            return False
    for f in rels:
        if not graph_ideal.contains(f):
            return False
    return True


def _census_substitutions(g: int, ring: PolyRing) -> Dict[str, MultiPoly]:
    """Eliminated variable -> fully substituted expression, in ``ring``."""
    def j3(tag, i, j):
        if i == j:
            return ring.zero
        if i < j:
            return ring.var(f"{tag}_{i}_{j}")
        return -ring.var(f"{tag}_{j}_{i}")

    def amon(lo, hi):
        out = ring.one
        for k in range(lo, hi):
            out = out * ring.var(f"a{k}")
        return out

    subs: Dict[str, MultiPoly] = {}

    def reduce_expr(f: MultiPoly) -> MultiPoly:
        mapping = {name: subs[name] for name in f.support_vars() if name in subs}
        while mapping:
            f = f.subs(mapping)
            mapping = {name: subs[name] for name in f.support_vars() if name in subs}
        return f

    for i in range(1, g + 1):
        for j in range(i, g + 1):
            subs[f"J0_1_{i}_{j}"] = -amon(i, j) * ring.var(f"JN_1_{i}_{j}")
    for i in range(1, g + 1):
        for j in range(1, i):
            subs[f"JN_1_{i}_{j}"] = -amon(j, i) * ring.var(f"J0_1_{i}_{j}")
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            expr = (
                -ring.var(f"JN_1_{i}_{j}")
                + amon(0, i) * j3("JN_3", i, j)
                - amon(j, g + 1) * j3("J0_3", i, j)
            )
            subs[f"J0_1_{j}_{i}"] = reduce_expr(expr)
    # flatten family-2 substitutions through the family-3 results
    for i in range(1, g + 1):
        for j in range(1, i):
            subs[f"JN_1_{i}_{j}"] = reduce_expr(subs[f"JN_1_{i}_{j}"])
    return subs
