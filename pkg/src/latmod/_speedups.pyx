# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _pykernel.

Same algorithms and same term representation (packed-int monomial keys,
int coefficients); the win is compiled loop control and inlined monomial
arithmetic.  Keys exceed 64 bits for larger variable counts, so they stay
Python ints; coefficient arithmetic is exact throughout.
"""

import heapq
from math import gcd

from latmod.errors import ResourceLimitError

KERNEL_KIND = "cython"


def content(list terms):
    cdef Py_ssize_t i
    g = 0
    for i in range(len(terms)):
        g = gcd(g, terms[i][1])
        if g == 1:
            return 1
    return g


def normalize_int(list terms):
    if not terms:
        return terms
    g = content(terms)
    if terms[0][1] < 0:
        g = -g
    if g != 1:
        return [(k, c // g) for k, c in terms]
    return terms


def normalize_mod(list terms, p):
    if not terms:
        return terms
    lc = terms[0][1] % p
    if lc == 1:
        return [(k, c % p) for k, c in terms]
    inv = pow(lc, p - 2, p)
    return [(k, (c * inv) % p) for k, c in terms]


cdef list _sorted_terms(dict d):
    cdef list out = [(k, c) for k, c in d.items() if c]
    out.sort(reverse=True)
    return out


def nf(list f, list basis, pk, p):
    """Mirror of _pykernel.nf; see there for the contract."""
    cdef Py_ssize_t nb, i, j, red, glen
    cdef bint negated
    if not f:
        return [], 1, 1
    nb = len(basis)
    cdef list lms = [g[0][0] for g in basis]
    cdef list lcs = [g[0][1] for g in basis]
    negated = pk.negated
    expmask = pk.exp_all_mask
    guard = pk.exp_guard_mask
    offset = pk.mul_offset
    cdef dict work = {}
    for k, c in f:
        work[k] = work.get(k, 0) + c
    cdef list heap = [-k for k in work]
    heapq.heapify(heap)
    cdef dict tail = {}
    num = 1
    den = 1
    cdef list g
    while heap:
        m = -heapq.heappop(heap)
        c = work.pop(m, 0)
        if p:
            c = c % p
        if c == 0:
            continue
        red = -1
        m_masked = m & expmask
        for i in range(nb):
            lm = <object> lms[i]
            if negated:
                d = (((lm & expmask) | guard) - m_masked) & guard
            else:
                d = ((m_masked | guard) - (lm & expmask)) & guard
            if d == guard:
                red = i
                break
        if red < 0:
            tail[m] = tail.get(m, 0) + c
            continue
        g = <list> basis[red]
        glen = len(g)
        q = m - lms[red] + offset
        if p:
            factor = (c * pow(lcs[red], p - 2, p)) % p
            for j in range(1, glen):
                k2, c2 = g[j]
                kk = q + k2 - offset
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
                    work[k] = work[k] * a
                for k in tail:
                    tail[k] = tail[k] * a
                num = num * a
            for j in range(1, glen):
                k2, c2 = g[j]
                kk = q + k2 - offset
                old = work.get(kk, 0)
                new = old - b * c2
                if new:
                    if not old:
                        heapq.heappush(heap, -kk)
                    work[kk] = new
                elif old:
                    del work[kk]
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
                        work[k] = work[k] // g2
                    for k in tail:
                        tail[k] = tail[k] // g2
                    num = num // g2
    cdef list out = _sorted_terms(tail)
    if not p:
        g3 = content(out)
        if g3 > 1:
            if num % g3 == 0:
                num = num // g3
            else:
                den = den * g3
            out = [(k, c // g3) for k, c in out]
        gg2 = gcd(num, den)
        num = num // gg2
        den = den // gg2
    return out, num, den


def spoly(list f, list g, pk, p):
    lmf = f[0][0]
    lcf = f[0][1]
    lmg = g[0][0]
    lcg = g[0][1]
    L = pk.lcm(lmf, lmg)
    offset = pk.mul_offset
    qf = L - lmf + offset
    qg = L - lmg + offset
    cdef dict acc = {}
    if p:
        for k, c in f:
            kk = qf + k - offset
            acc[kk] = (acc.get(kk, 0) + lcg * c) % p
        for k, c in g:
            kk = qg + k - offset
            acc[kk] = (acc.get(kk, 0) - lcf * c) % p
        return _sorted_terms(acc)
    gg = gcd(lcf, lcg)
    a = lcg // gg
    b = lcf // gg
    for k, c in f:
        kk = qf + k - offset
        acc[kk] = acc.get(kk, 0) + a * c
    for k, c in g:
        kk = qg + k - offset
        acc[kk] = acc.get(kk, 0) - b * c
    return normalize_int(_sorted_terms(acc))


def _update_pairs(list pairs, G, list lms, Py_ssize_t h_idx, pk):
    lmh = lms[h_idx]
    lcm = pk.lcm
    divides = pk.divides
    cdef list kept = []
    cdef Py_ssize_t i
    for (L, i, j) in pairs:
        if (
            divides(lmh, L)
            and lcm(lms[i], lmh) != L
            and lcm(lms[j], lmh) != L
        ):
            continue
        kept.append((L, i, j))
    cdef list cand = []
    for i in range(h_idx):
        cand.append((lcm(lms[i], lmh), i))
    cdef list cand2 = []
    cdef bint drop
    for (L, i) in cand:
        drop = False
        for (L2, j) in cand:
            if L2 != L and divides(L2, L):
                drop = True
                break
        if not drop:
            cand2.append((L, i))
    cdef dict seen = {}
    cdef list cand3 = []
    for (L, i) in cand2:
        if L in seen:
            continue
        seen[L] = i
        cand3.append((L, i))
    for (L, i) in cand3:
        if not pk.coprime(lms[i], lmh):
            kept.append((L, i, h_idx))
    return kept


def buchberger(gens, pk, p, pair_limit=100000):
    cdef list G = []
    for f in gens:
        ff = normalize_mod(f, p) if p else normalize_int(f)
        ff = [(k, c) for k, c in ff if c]
        if ff:
            G.append(ff)
    G.sort(key=lambda g: g[0][0])
    cdef list uniq = []
    for g in G:
        if not uniq or uniq[len(uniq) - 1] != g:
            uniq.append(g)
    G = uniq
    cdef list lms = [g[0][0] for g in G]
    cdef list pairs = []
    cdef Py_ssize_t i
    for i in range(len(G)):
        pairs = _update_pairs(pairs, G, lms, i, pk)
    cdef list heap = pairs
    heapq.heapify(heap)
    while heap:
        if len(heap) > pair_limit:
            raise ResourceLimitError(
                f"pair queue exceeded {pair_limit} during Buchberger"
            )
        L, ii, jj = heapq.heappop(heap)
        s = spoly(G[ii], G[jj], pk, p)
        if not s:
            continue
        r, _, _ = nf(s, G, pk, p)
        if not r:
            continue
        r = normalize_mod(r, p) if p else normalize_int(r)
        G.append(r)
        lms.append(r[0][0])
        heap = _update_pairs(heap, G, lms, len(G) - 1, pk)
        heapq.heapify(heap)
    return interreduce(G, pk, p)


def interreduce(basis, pk, p):
    cdef list work = [b for b in basis if b]
    work.sort(key=lambda g: g[0][0])
    cdef list minimal = []
    divides = pk.divides
    for g in work:
        ok = True
        for h in minimal:
            if divides(h[0][0], g[0][0]):
                ok = False
                break
        if ok:
            minimal.append(g)
    cdef bint changed = True
    cdef Py_ssize_t k
    while changed:
        changed = False
        for k in range(len(minimal)):
            others = [minimal[m] for m in range(len(minimal)) if m != k]
            if not others:
                continue
            r, _, _ = nf(minimal[k], others, pk, p)
            r = normalize_mod(r, p) if p else normalize_int(r)
            if r != minimal[k]:
                changed = True
                if r:
                    minimal[k] = r
                else:
                    del minimal[k]
                    break
        minimal.sort(key=lambda g: g[0][0])
    cdef list out = [normalize_mod(g, p) if p else normalize_int(g) for g in minimal]
    out.sort(key=lambda g: g[0][0], reverse=True)
    return out
