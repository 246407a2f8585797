"""Pure-Python exact polynomial kernel.

Polynomials are lists of ``(key, coeff)`` pairs sorted descending by key,
where keys are packed monomials (see packing.py) and coefficients are
nonzero ints: reduced residues for GF(p), arbitrary integers for the
characteristic-0 path (which runs fraction-free; rational results are
recovered from the returned multiplier pair).

The compiled twin in _speedups.pyx mirrors this module function for
function; latmod.kernel picks one at import time.
"""

from __future__ import annotations

import heapq
from math import gcd

from .errors import ResourceLimitError

KERNEL_KIND = "python"


def content(terms):
    g = 0
    for _, c in terms:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def normalize_int(terms):
    """Primitive part with positive leading coefficient."""
    if not terms:
        return terms
    g = content(terms)
    if terms[0][1] < 0:
        g = -g
    if g != 1:
        terms = [(k, c // g) for k, c in terms]
    return terms


def normalize_mod(terms, p):
    """Monic normalization over GF(p)."""
    if not terms:
        return terms
    lc = terms[0][1] % p
    if lc == 1:
        return [(k, c % p) for k, c in terms]
    inv = pow(lc, p - 2, p)
    return [(k, (c * inv) % p) for k, c in terms]


def _sorted_terms(d):
    return sorted(((k, c) for k, c in d.items() if c), reverse=True)


def nf(f, basis, pk, p):
    """Full normal form of f modulo basis.

    Returns ``(terms, num, den)`` with the invariant
    ``terms == exact_normal_form * num / den`` in characteristic 0; over
    GF(p) the reduction is exact and num == den == 1.
    """
    if not f:
        return [], 1, 1
    lms = [g[0][0] for g in basis]
    lcs = [g[0][1] for g in basis]
    nb = len(basis)
    divides = pk.divides
    quotient = pk.quotient
    mul = pk.mul
    work = {}
    for k, c in f:
        work[k] = work.get(k, 0) + c
    heap = [-k for k in work]
    heapq.heapify(heap)
    tail = {}
    num = 1
    den = 1
    while heap:
        m = -heapq.heappop(heap)
        c = work.pop(m, 0)
        if p:
            c %= p
        if c == 0:
            continue
        red = -1
        for i in range(nb):
            if divides(lms[i], m):
                red = i
                break
        if red < 0:
            tail[m] = tail.get(m, 0) + c
            continue
        g = basis[red]
        q = quotient(m, lms[red])
        if p:
            factor = (c * pow(lcs[red], p - 2, p)) % p
            for j in range(1, len(g)):
                k2, c2 = g[j]
                kk = mul(q, k2)
                old = work.get(kk, 0)
                new = (old - factor * c2) % p
                if new:
                    if not old:
                        heapq.heappush(heap, -kk)
                    work[kk] = new
                elif old:
                    del work[kk]
        else:
            lc = lcs[red]
            gg = gcd(c, lc)
            a = lc // gg
            b = c // gg
            if a < 0:
                a = -a
                b = -b
            if a != 1:
                for k in work:
                    work[k] *= a
                for k in tail:
                    tail[k] *= a
                num *= a
            for j in range(1, len(g)):
                k2, c2 = g[j]
                kk = mul(q, k2)
                old = work.get(kk, 0)
                new = old - b * c2
                if new:
                    if not old:
                        heapq.heappush(heap, -kk)
                    work[kk] = new
                elif old:
                    del work[kk]
            # Keep integer growth in check.
            if num.bit_length() > 512:
                g2 = num
                for v in work.values():
                    g2 = gcd(g2, v)
                    if g2 == 1:
                        break
                else:
                    for v in tail.values():
                        g2 = gcd(g2, v)
                        if g2 == 1:
                            break
                if g2 > 1:
                    for k in work:
                        work[k] //= g2
                    for k in tail:
                        tail[k] //= g2
                    num //= g2
    out = _sorted_terms(tail)
    if not p:
        g3 = content(out)
        if g3 > 1:
            if num % g3 == 0:
                num //= g3
            else:
                den *= g3
            out = [(k, c // g3) for k, c in out]
        gg = gcd(num, den)
        num //= gg
        den //= gg
    return out, num, den


def spoly(f, g, pk, p):
    """S-polynomial, primitive (char 0) or reduced mod p."""
    lmf, lcf = f[0]
    lmg, lcg = g[0]
    L = pk.lcm(lmf, lmg)
    qf = pk.quotient(L, lmf)
    qg = pk.quotient(L, lmg)
    mul = pk.mul
    acc = {}
    if p:
        for k, c in f:
            kk = mul(qf, k)
            acc[kk] = (acc.get(kk, 0) + lcg * c) % p
        for k, c in g:
            kk = mul(qg, k)
            acc[kk] = (acc.get(kk, 0) - lcf * c) % p
        return _sorted_terms(acc)
    gg = gcd(lcf, lcg)
    a = lcg // gg
    b = lcf // gg
    for k, c in f:
        kk = mul(qf, k)
        acc[kk] = acc.get(kk, 0) + a * c
    for k, c in g:
        kk = mul(qg, k)
        acc[kk] = acc.get(kk, 0) - b * c
    return normalize_int(_sorted_terms(acc))


def _update_pairs(pairs, G, lms, h_idx, pk):
    """Gebauer-Moeller pair update for the new basis element at h_idx."""
    lmh = lms[h_idx]
    lcm = pk.lcm
    divides = pk.divides
    # B criterion: drop old pairs whose lcm is strictly refined through h.
    kept = []
    for (L, i, j) in pairs:
        if (
            divides(lmh, L)
            and lcm(lms[i], lmh) != L
            and lcm(lms[j], lmh) != L
        ):
            continue
        kept.append((L, i, j))
    # Candidate new pairs (i, h).
    cand = []
    for i in range(h_idx):
        cand.append((lcm(lms[i], lmh), i))
    # M criterion: drop candidates whose lcm is a proper multiple of another.
    cand2 = []
    for (L, i) in cand:
        drop = False
        for (L2, j) in cand:
            if L2 != L and divides(L2, L):
                drop = True
                break
        if not drop:
            cand2.append((L, i))
    # F criterion: among equal lcms keep a single representative.
    seen = {}
    cand3 = []
    for (L, i) in cand2:
        if L in seen:
            continue
        seen[L] = i
        cand3.append((L, i))
    # Buchberger's coprimality criterion.
    for (L, i) in cand3:
        if not pk.coprime(lms[i], lmh):
            kept.append((L, i, h_idx))
    return kept


def buchberger(gens, pk, p, pair_limit=100000):
    """Reduced Groebner basis of the ideal spanned by ``gens``.

    Normal selection strategy (smallest lcm first) with the
    Gebauer-Moeller pair criteria.  Raises ResourceLimitError when the
    live pair count exceeds ``pair_limit``.
    """
    G = []
    for f in gens:
        ff = normalize_mod(f, p) if p else normalize_int(f)
        ff = [(k, c) for k, c in ff if c]
        if ff:
            G.append(ff)
    G.sort(key=lambda g: g[0][0])
    # Dedup identical generators.
    uniq = []
    for g in G:
        if not uniq or uniq[-1] != g:
            uniq.append(g)
    G = uniq
    lms = [g[0][0] for g in G]
    pairs = []
    for i in range(len(G)):
        pairs = _update_pairs(pairs, G, lms, i, pk)
    heap = list(pairs)
    heapq.heapify(heap)
    while heap:
        if len(heap) > pair_limit:
            raise ResourceLimitError(
                f"pair queue exceeded {pair_limit} during Buchberger"
            )
        L, i, j = heapq.heappop(heap)
        s = spoly(G[i], G[j], pk, p)
        if not s:
            continue
        r, _, _ = nf(s, G, pk, p)
        if not r:
            continue
        r = normalize_mod(r, p) if p else normalize_int(r)
        G.append(r)
        lms.append(r[0][0])
        heap = _update_pairs(list(heap), G, lms, len(G) - 1, pk)
        heapq.heapify(heap)
    return interreduce(G, pk, p)


def interreduce(basis, pk, p):
    """Minimal + fully reduced + normalized basis, sorted by lead desc."""
    basis = [b for b in basis if b]
    basis.sort(key=lambda g: g[0][0])
    minimal = []
    for g in basis:
        if not any(pk.divides(h[0][0], g[0][0]) for h in minimal):
            minimal.append(g)
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = [minimal[k] for k in range(len(minimal)) if k != i]
            if not others:
                continue
            r, _, _ = nf(minimal[i], others, pk, p)
            r = normalize_mod(r, p) if p else normalize_int(r)
            if r != minimal[i]:
                changed = True
                if r:
                    minimal[i] = r
                else:
                    del minimal[i]
                    break
        minimal.sort(key=lambda g: g[0][0])
    out = [normalize_mod(g, p) if p else normalize_int(g) for g in minimal]
    out.sort(key=lambda g: g[0][0], reverse=True)
    return out
