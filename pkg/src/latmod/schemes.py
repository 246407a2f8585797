"""Builders for the matrix-equation schemes as chart ideals.

Covers: the cyclic product scheme on parabolic matrices (all rotations of
Pi_0 ... Pi_N = t Id), its full-matrix variant, the distinguished-minor
charts, the Grassmannian-chart chain models (plain and symplectic), the
symplectic pairing scheme with its adjointness relations, and the
cyclic-shift / transpose-conjugation symmetries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import polymat
from .chains import ChainSpec, ParabolicShape, shift_matrix_power
from .chart import ChartIdeal
from .errors import ShapeViolation
from .ideals import PolyIdeal, minors
from .intlinalg import IntMatrix
from .poly import Field, MultiPoly, PolyRing, QQ


# -- core cyclic-product ideals ------------------------------------------------

def _dedupe(gens: Sequence[MultiPoly]) -> List[MultiPoly]:
    seen = set()
    out = []
    for g in gens:
        if g.is_zero():
            continue
        key = frozenset(g.terms.items())
        if key in seen:
            continue
        seen.add(key)
        out.append(g)
    return out


def mu_ring(n: int, r: int, N: int, field: Field = QQ) -> PolyRing:
    shape = ParabolicShape(n, r)
    names: List[str] = []
    for i in range(N + 1):
        names.extend(shape.var_names(i))
    names.append("t")
    return PolyRing(field, names)


def _cyclic_product_generators(mats, t, ring) -> List[MultiPoly]:
    """Entries of every cyclic rotation product minus t*Id, deduplicated."""
    n = len(mats[0])
    count = len(mats)
    tid = polymat.identity(ring, n, t)
    gens: List[MultiPoly] = []
    for j in range(count):
        prod = mats[j]
        for k in range(1, count):
            prod = polymat.matmul(prod, mats[(j + k) % count])
        gens.extend(polymat.entries(polymat.matsub(prod, tid)))
    return _dedupe(gens)


def mu_ideal(n: int, r: int, N: int, field: Field = QQ) -> ChartIdeal:
    """The scheme of N+1 parabolic-shape matrices with all cyclic products
    equal to t*Id_n.

    All rotations are imposed: without invertibility they are not
    interdefinable.  The open rank condition is not part of the ideal;
    charts carry it.
    """
    ring = mu_ring(n, r, N, field)
    shape = ParabolicShape(n, r)
    mats = [shape.symbolic_matrix(ring, i) for i in range(N + 1)]
    gens = _cyclic_product_generators(mats, ring.var("t"), ring)
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens),
        provenance=f"mu(n={n},r={r},N={N})",
        meta={"kind": "mu", "n": n, "r": r, "N": N},
    )


def faltings_mu_ideal(r: int, N: int, field: Field = QQ) -> ChartIdeal:
    """Full-matrix variant: N+1 unconstrained r x r matrices, parameter t."""
    if r < 1:
        raise ValueError("need r >= 1")
    names: List[str] = []
    for i in range(N + 1):
        for a in range(r):
            for b in range(r):
                names.append(f"A{i}_{a + 1}_{b + 1}")
    names.append("t")
    ring = PolyRing(field, names)
    mats = []
    for i in range(N + 1):
        mats.append(
            [[ring.var(f"A{i}_{a + 1}_{b + 1}") for b in range(r)] for a in range(r)]
        )
    gens = _cyclic_product_generators(mats, ring.var("t"), ring)
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens),
        provenance=f"faltings_mu(r={r},N={N})",
        meta={"kind": "faltings_mu", "r": r, "N": N},
    )


def _submatrix_det(ring, mat, rows, cols) -> MultiPoly:
    if not rows:
        return ring.one
    sub = [[mat[i][j] for j in cols] for i in rows]
    return minors(sub, len(rows))[0]


def default_minor_choices(spec: ChainSpec) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Minor per slot that is invertible at the standard shift-power point."""
    out = []
    for i in range(spec.N + 1):
        d = spec.step(i)
        size = spec.n - d
        out.append((tuple(range(size)), tuple(range(d, spec.n))))
    return out


def mu_chart_ideal(
    spec: ChainSpec,
    minor_choices: Optional[Sequence[Tuple[Sequence[int], Sequence[int]]]] = None,
    field: Field = QQ,
) -> ChartIdeal:
    """Distinguished-minor chart of the cyclic product scheme.

    For each slot i one (n - d_i)-minor of Pi_i is inverted through an
    auxiliary y_i; the full chart locus is the union over all choices.
    t itself is never inverted here.
    """
    n, r, N = spec.n, spec.r, spec.N
    base = mu_ideal(n, r, N, field)
    if minor_choices is None:
        minor_choices = default_minor_choices(spec)
    if len(minor_choices) != N + 1:
        raise ValueError(f"need one minor choice per slot ({N + 1})")
    ring = base.ring.extend([f"y{i}" for i in range(N + 1)])
    shape = ParabolicShape(n, r)
    mats = [shape.symbolic_matrix(ring, i) for i in range(N + 1)]
    gens = [g.map_ring(ring) for g in base.generators]
    inverses = []
    choices_meta = []
    for i, (rows, cols) in enumerate(minor_choices):
        size = n - spec.step(i)
        rows = tuple(int(x) for x in rows)
        cols = tuple(int(x) for x in cols)
        if len(rows) != size or len(cols) != size:
            raise ValueError(
                f"slot {i}: minor must have size {size}, got {len(rows)}x{len(cols)}"
            )
        if any(not 0 <= x < n for x in rows + cols):
            raise ValueError("minor indices out of range")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("minor indices must be distinct")
        m = _submatrix_det(ring, mats[i], rows, cols)
        y = ring.var(f"y{i}")
        gens.append(y * m - 1)
        inverses.append((f"y{i}", m))
        choices_meta.append([list(rows), list(cols)])
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens),
        provenance=f"mu_chart(n={n},r={r},N={N},d={list(spec.d)})",
        inverses=tuple(inverses),
        meta={
            "kind": "mu_chart",
            "n": n,
            "r": r,
            "N": N,
            "d": list(spec.d),
            "minors": choices_meta,
        },
    )


# -- chain local models ----------------------------------------------------------

def _frames(ring: PolyRing, spec: ChainSpec, pivots) -> List[List[List[MultiPoly]]]:
    n, r = spec.n, spec.r
    frames = []
    for i, piv in enumerate(pivots):
        M = polymat.zeros(ring, n, r)
        for k, p in enumerate(piv):
            M[p][k] = ring.one
        for a in range(n):
            if a in piv:
                continue
            for k in range(r):
                M[a][k] = ring.var(f"w{i}_{a + 1}_{k + 1}")
        frames.append(M)
    return frames


def _validate_pivots(spec: ChainSpec, pivots) -> List[Tuple[int, ...]]:
    if pivots is None:
        pivots = [tuple(range(spec.r))] * (spec.N + 1)
    pivots = [tuple(sorted(int(x) for x in p)) for p in pivots]
    if len(pivots) != spec.N + 1:
        raise ValueError(f"need {spec.N + 1} pivot sets")
    for p in pivots:
        if len(p) != spec.r or len(set(p)) != spec.r:
            raise ValueError("each pivot set must pick r distinct rows")
        if any(not 0 <= x < spec.n for x in p):
            raise ValueError("pivot out of range")
    return pivots


def local_model_ideal(
    spec: ChainSpec,
    pivots: Optional[Sequence[Sequence[int]]] = None,
    field: Field = QQ,
) -> ChartIdeal:
    """Grassmannian-chart ideal of the chain model.

    Chart data: rank-r frames M_i with identity at the pivot rows; the
    chain condition "alpha_i maps omega_i into omega_{i-1}" becomes the
    vanishing of all (r+1)-minors of [T^{d_i} M_i | M_{i-1}], with the
    wrap-around slot using the full-twist identification.
    """
    pivots = _validate_pivots(spec, pivots)
    n, r, N = spec.n, spec.r, spec.N
    names: List[str] = []
    for i, piv in enumerate(pivots):
        for a in range(n):
            if a in piv:
                continue
            for k in range(r):
                names.append(f"w{i}_{a + 1}_{k + 1}")
    names.append("t")
    ring = PolyRing(field, names)
    frames = _frames(ring, spec, pivots)
    gens: List[MultiPoly] = []
    for i in range(N + 1):
        alpha = shift_matrix_power(n, spec.step(i), ring)
        stacked = polymat.hstack(
            polymat.matmul(alpha, frames[i]), frames[(i - 1) % (N + 1)]
        )
        for m in minors(stacked, r + 1):
            if not m.is_zero():
                gens.append(m)
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens),
        provenance=f"local_model(n={n},r={r},N={N},d={list(spec.d)})",
        meta={
            "kind": "local_model",
            "n": n,
            "r": r,
            "N": N,
            "d": list(spec.d),
            "pivots": [list(p) for p in pivots],
        },
    )


def delta_matrix(g: int) -> IntMatrix:
    """Anti-diagonal permutation matrix of the reversal (g, g-1, ..., 1)."""
    return IntMatrix.from_rows(
        [[1 if j == g - 1 - i else 0 for j in range(g)] for i in range(g)]
    )


def j_matrix(g: int) -> IntMatrix:
    d = delta_matrix(g)
    rows = []
    for i in range(g):
        rows.append([0] * g + [-x for x in d.row(i)])
    for i in range(g):
        rows.append(list(d.row(i)) + [0] * g)
    return IntMatrix.from_rows(rows)


@dataclass(frozen=True)
class SymplecticData:
    """Integer pairing data and the exact Gram matrices on the end slots."""

    g: int
    Delta: IntMatrix
    J: IntMatrix
    gram0: Tuple[Tuple[MultiPoly, ...], ...]
    gramN: Tuple[Tuple[MultiPoly, ...], ...]

    def verify(self) -> bool:
        if abs(self.J.det()) != 1:
            return False
        n = 2 * self.g
        for G in (self.gram0, self.gramN):
            for i in range(n):
                for j in range(n):
                    if G[i][j] != -G[j][i]:
                        return False
        return True


def _divide_by_var(f: MultiPoly, name: str) -> MultiPoly:
    i = f.ring.index[name]
    out = {}
    for e, c in f.terms.items():
        if e[i] == 0:
            raise ValueError(f"entry not divisible by {name}")
        e2 = list(e)
        e2[i] -= 1
        out[tuple(e2)] = c
    return MultiPoly(f.ring, out)


def symplectic_gram_matrices(g: int, ring: PolyRing) -> SymplecticData:
    """Gram matrices of the pairing on slot 0 and of t^{-1}(pairing) on
    slot N, both in the chosen lattice bases; the latter is exact since
    every entry of (T^g)^t J T^g is divisible by t."""
    n = 2 * g
    J = j_matrix(g)
    Jp = [[ring.const(J[i, j]) for j in range(n)] for i in range(n)]
    Tg = shift_matrix_power(n, g, ring)
    S = polymat.matmul(polymat.matmul(polymat.transpose(Tg), Jp), Tg)
    GN = [[_divide_by_var(x, "t") if not x.is_zero() else x for x in row] for row in S]
    return SymplecticData(
        g=g,
        Delta=delta_matrix(g),
        J=J,
        gram0=tuple(tuple(row) for row in Jp),
        gramN=tuple(tuple(row) for row in GN),
    )


def symplectic_local_model_ideal(
    spec: ChainSpec,
    pivots: Optional[Sequence[Sequence[int]]] = None,
    field: Field = QQ,
) -> ChartIdeal:
    """Chain model plus total isotropy of the end frames.

    Isotropy of frame M against an antisymmetric Gram G contributes the
    strictly-upper entries of M^t G M (the rest vanish identically).
    """
    if not spec.symplectic:
        raise ValueError("spec is not symplectic")
    base = local_model_ideal(spec, pivots, field)
    ring = base.ring
    g = spec.n // 2
    sdata = symplectic_gram_matrices(g, ring)
    pivots = base.meta["pivots"]
    frames = _frames(ring, spec, [tuple(p) for p in pivots])
    gens = list(base.generators)
    for M, G in ((frames[0], sdata.gram0), (frames[spec.N], sdata.gramN)):
        Gm = [list(row) for row in G]
        W = polymat.matmul(polymat.matmul(polymat.transpose(M), Gm), M)
        for i in range(spec.r):
            for j in range(i + 1, spec.r):
                if not W[i][j].is_zero():
                    gens.append(W[i][j])
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens),
        provenance=f"symplectic_{base.provenance}",
        meta=dict(base.meta, kind="symplectic_local_model", g=g),
    )


# -- the symplectic pairing scheme ------------------------------------------------

def sigma_ideal(g: int, N: int, field: Field = QQ) -> ChartIdeal:
    """Cyclic product scheme for (2g, g) together with two unknown
    symplectic pairings on the end slots and the adjointness relation
    between the long product and the last matrix.

    Pairing unknowns: J0_1 (g x g), J0_3 antisymmetric, same at slot N;
    the lower-left blocks are forced to -J1^t and the upper-left blocks
    vanish (total isotropy).  Nondegeneracy is chart data: inverses of
    both determinants.
    """
    if g < 1:
        raise ValueError("need g >= 1")
    n = 2 * g
    base = mu_ideal(n, g, N, field)
    jnames: List[str] = []
    for tag in ("J0", "JN"):
        for a in range(1, g + 1):
            for b in range(1, g + 1):
                jnames.append(f"{tag}_1_{a}_{b}")
        for a in range(1, g + 1):
            for b in range(a + 1, g + 1):
                jnames.append(f"{tag}_3_{a}_{b}")
    ring = base.ring.extend(jnames + ["ydet0", "ydetN"])
    shape = ParabolicShape(n, g)
    mats = [shape.symbolic_matrix(ring, i) for i in range(N + 1)]

    def pairing_matrix(tag: str):
        J1 = [[ring.var(f"{tag}_1_{a}_{b}") for b in range(1, g + 1)] for a in range(1, g + 1)]
        J3 = polymat.zeros(ring, g, g)
        for a in range(1, g + 1):
            for b in range(a + 1, g + 1):
                v = ring.var(f"{tag}_3_{a}_{b}")
                J3[a - 1][b - 1] = v
                J3[b - 1][a - 1] = -v
        top = [polymat.zeros(ring, g, g)[i] + J1[i] for i in range(g)]
        bot = [[-J1[b][a] for b in range(g)] + J3[a] for a in range(g)]
        return top + bot

    J0 = pairing_matrix("J0")
    JN = pairing_matrix("JN")
    gens = [gg.map_ring(ring) for gg in base.generators]
    prod = mats[0]
    for k in range(1, N):
        prod = polymat.matmul(prod, mats[k])
    adj = polymat.matsub(
        polymat.matmul(polymat.transpose(prod), JN),
        polymat.matmul(J0, mats[N]),
    )
    for e in polymat.entries(adj):
        if not e.is_zero():
            gens.append(e)
    det0 = minors(J0, n)[0]
    detN = minors(JN, n)[0]
    gens.append(ring.var("ydet0") * det0 - 1)
    gens.append(ring.var("ydetN") * detN - 1)
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens),
        provenance=f"sigma(g={g},N={N})",
        inverses=(("ydet0", det0), ("ydetN", detN)),
        meta={"kind": "sigma", "g": g, "N": N},
    )


# -- symmetries -----------------------------------------------------------------

def _mu_meta(chart: ChartIdeal) -> Tuple[int, int, int]:
    meta = chart.meta
    if meta.get("kind") != "mu":
        raise ValueError("symmetries apply to the plain cyclic-product ideal")
    return int(meta["n"]), int(meta["r"]), int(meta["N"])


def apply_cyclic_shift(chart: ChartIdeal, s: int) -> ChartIdeal:
    """Substitute Pi_i -> Pi_{i+s} (indices mod N+1)."""
    n, r, N = _mu_meta(chart)
    ring = chart.ring
    s = s % (N + 1)
    perm = list(range(ring.nvars))
    shape = ParabolicShape(n, r)
    for i in range(N + 1):
        src = [ring.index[v] for v in shape.var_names(i)]
        dst = [ring.index[v] for v in shape.var_names((i + s) % (N + 1))]
        for a, b in zip(src, dst):
            perm[a] = b
    gens = []
    for g in chart.generators:
        terms = {}
        for e, c in g.terms.items():
            e2 = [0] * ring.nvars
            for pos, exp in enumerate(e):
                if exp:
                    e2[perm[pos]] = exp
            terms[tuple(e2)] = c
        gens.append(MultiPoly(ring, terms))
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens, chart.ideal.order),
        provenance=f"{chart.provenance};shift(s={s})",
        meta=dict(chart.meta, shifted=s),
    )


def involution_permutation(N: int) -> List[int]:
    """Index action of the transpose-conjugation symmetry: 0 is fixed,
    i -> N+1-i otherwise."""
    return [0] + [N + 1 - i for i in range(1, N + 1)]


def apply_symplectic_involution(chart: ChartIdeal) -> ChartIdeal:
    """Substitute Pi_i -> J^{-1} Pi_{sigma(i)}^t J on the symplectic shape.

    The conjugation swaps the diagonal blocks through the antidiagonal
    and keeps the shape; any entry landing in the zero block is checked
    to vanish identically.
    """
    n, r, N = _mu_meta(chart)
    if n != 2 * r:
        raise ValueError("involution needs the symplectic shape n = 2g, r = g")
    g = r
    ring = chart.ring
    shape = ParabolicShape(n, r)
    J = j_matrix(g)
    Jinv_rows = _int_inverse_unimodular(J)
    sigma = involution_permutation(N)
    mapping: Dict[str, MultiPoly] = {}
    for i in range(N + 1):
        src = shape.symbolic_matrix(ring, sigma[i])
        transposed = polymat.transpose(src)
        Jp = [[ring.const(J[a, b]) for b in range(n)] for a in range(n)]
        Jinvp = [[ring.const(Jinv_rows[a][b]) for b in range(n)] for a in range(n)]
        target = polymat.matmul(polymat.matmul(Jinvp, transposed), Jp)
        for a in range(r, n):
            for b in range(r):
                if not target[a][b].is_zero():
                    raise ShapeViolation(
                        f"involution image of Pi{sigma[i]} leaves the shape at ({a},{b})"
                    )
        for a, b in shape.positions():
            mapping[f"Pi{i}_{a + 1}_{b + 1}"] = target[a][b]
    gens = [gg.subs({**mapping, "t": ring.var("t")}) for gg in chart.generators]
    return ChartIdeal(
        ideal=PolyIdeal(ring, gens, chart.ideal.order),
        provenance=f"{chart.provenance};involution",
        meta=dict(chart.meta, involuted=True),
    )


def _int_inverse_unimodular(M: IntMatrix) -> List[List[int]]:
    from fractions import Fraction

    from .gfq import mat_inv
    from .poly import QQ as _QQ

    rows = [[Fraction(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
    inv = mat_inv(rows, _QQ)
    if inv is None:
        raise ValueError("matrix not invertible")
    out = []
    for row in inv:
        out.append([int(x) for x in row])
        if any(x.denominator != 1 for x in row):
            raise ValueError("inverse is not integral")
    return out


# -- exact equivariance certificates ---------------------------------------------

def _signed_key(g: MultiPoly):
    """Canonical key identifying g up to sign."""
    items = sorted(g.terms.items())
    if not items:
        return ()
    lead = items[-1][1]
    flip = lead < 0
    return tuple((e, -c if flip else c) for e, c in items)


def generators_match_up_to_sign(a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> bool:
    return {_signed_key(g) for g in a} == {_signed_key(g) for g in b}


def generators_match_exactly(a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> bool:
    return {frozenset(g.terms.items()) for g in a} == {
        frozenset(g.terms.items()) for g in b
    }
