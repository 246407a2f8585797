"""Compiled kernel vs pure-Python twin: identical results on seeded
workloads (the benchmark uses the same pairing)."""

import random

import pytest

from latmod.kernel import kernels
from latmod.packing import get_packing

KERNELS = kernels()


def random_poly_terms(rng, pk, nvars, p, nterms=4, maxdeg=3):
    terms = {}
    for _ in range(nterms):
        e = [0] * nvars
        for _ in range(rng.randrange(maxdeg + 1)):
            e[rng.randrange(nvars)] += 1
        c = rng.randrange(1, p) if p else rng.randrange(-5, 6) or 1
        key = pk.pack(tuple(e))
        terms[key] = terms.get(key, 0) + c
    out = [(k, (c % p if p else c)) for k, c in terms.items() if (c % p if p else c)]
    out.sort(reverse=True)
    return out


@pytest.mark.skipif(len(KERNELS) < 2, reason="compiled kernel unavailable")
@pytest.mark.parametrize("p", [0, 5])
@pytest.mark.parametrize("order", ["grevlex", "lex", ("block", 2)])
def test_buchberger_parity(p, order):
    nvars = 4
    pk = get_packing(nvars, order)
    rng = random.Random(2029)
    for trial in range(8):
        gens = [
            random_poly_terms(rng, pk, nvars, p)
            for _ in range(rng.randrange(1, 4))
        ]
        gens = [g for g in gens if g]
        if not gens:
            continue
        results = {}
        for name, impl in KERNELS.items():
            results[name] = impl.buchberger([list(g) for g in gens], pk, p)
        assert results["python"] == results["cython"], (trial, gens)


@pytest.mark.skipif(len(KERNELS) < 2, reason="compiled kernel unavailable")
@pytest.mark.parametrize("p", [0, 7])
def test_nf_parity(p):
    nvars = 3
    pk = get_packing(nvars, "grevlex")
    rng = random.Random(777)
    for trial in range(20):
        basis = [random_poly_terms(rng, pk, nvars, p) for _ in range(2)]
        basis = [b for b in basis if b]
        if not basis:
            continue
        basis = KERNELS["python"].interreduce(
            [list(b) for b in basis], pk, p
        )
        if not basis:
            continue
        f = random_poly_terms(rng, pk, nvars, p, nterms=6, maxdeg=4)
        outs = {}
        for name, impl in KERNELS.items():
            outs[name] = impl.nf(list(f), [list(b) for b in basis], pk, p)
        assert outs["python"] == outs["cython"]


def test_kernel_kind_reported():
    from latmod.kernel import KERNEL_KIND

    assert KERNEL_KIND in ("python", "cython")
