#!/usr/bin/env python3
"""Benchmark: compiled kernel vs pure-Python twin on Groebner workloads.

Runs the same reduced-basis computations through both kernels and reports
wall times and the speedup ratio.  Workloads are the hot paths of the
package: the cyclic-product ideals over QQ and GF(p), and a dense random
ideal batch.

Usage:  python benchmarks/bench_kernel.py [--quick]
"""

from __future__ import annotations

import argparse
import random
import time

from latmod.ideals import poly_to_terms
from latmod.kernel import kernels
from latmod.packing import get_packing
from latmod.poly import GF, PolyRing, QQ
from latmod.schemes import mu_ideal


def workload_mu(n, r, N, field):
    chart = mu_ideal(n, r, N, field)
    pk = get_packing(chart.ring.nvars, "grevlex")
    gens = [poly_to_terms(g, pk) for g in chart.generators]
    return gens, pk, field.p


def workload_random(nvars, ngens, p, seed):
    ring = PolyRing(GF(p) if p else QQ, [f"x{i}" for i in range(nvars)])
    pk = get_packing(nvars, "grevlex")
    rng = random.Random(seed)
    gens = []
    for _ in range(ngens):
        f = ring.zero
        for _ in range(4):
            m = ring.one
            for _ in range(rng.randrange(4)):
                m = m * ring.var(f"x{rng.randrange(nvars)}")
            c = rng.randrange(1, p) if p else rng.randrange(-9, 10) or 1
            f = f + c * m
        gens.append(f)
    gens = [poly_to_terms(g, pk) for g in gens if not g.is_zero()]
    return gens, pk, p


def run(name, gens, pk, p, impls, repeat=1):
    times = {}
    results = {}
    for kind, impl in impls.items():
        best = None
        for _ in range(repeat):
            work = [list(g) for g in gens]
            t0 = time.perf_counter()
            out = impl.buchberger(work, pk, p)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        times[kind] = best
        results[kind] = out
    if len(results) == 2 and results["python"] != results["cython"]:
        raise AssertionError(f"kernel mismatch on workload {name}")
    line = f"{name:34s}"
    for kind in sorted(times):
        line += f"  {kind}: {times[kind] * 1000:9.1f} ms"
    if len(times) == 2:
        line += f"  speedup: {times['python'] / times['cython']:.2f}x"
    print(line)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="skip the slow cases")
    args = ap.parse_args()
    impls = kernels()
    if len(impls) < 2:
        print("compiled kernel not available; benchmarking pure Python only")
    print(f"kernels under test: {', '.join(sorted(impls))}\n")
    run("mu(2,1,2) over QQ", *workload_mu(2, 1, 2, QQ), impls, repeat=3)
    run("mu(3,1,1) over QQ", *workload_mu(3, 1, 1, QQ), impls, repeat=3)
    run("mu(3,2,1) over GF(5)", *workload_mu(3, 2, 1, GF(5)), impls, repeat=3)
    run("mu(3,1,2) over QQ", *workload_mu(3, 1, 2, QQ), impls)
    run("mu(3,2,2) over GF(7)", *workload_mu(3, 2, 2, GF(7)), impls)
    run("random 5 vars GF(5)", *workload_random(5, 4, 5, 11), impls, repeat=3)
    run("random 5 vars QQ", *workload_random(5, 4, 0, 11), impls, repeat=3)
    if not args.quick:
        run("mu(4,2,1) over QQ", *workload_mu(4, 2, 1, QQ), impls)
        run("mu(4,2,2) over QQ", *workload_mu(4, 2, 2, QQ), impls)


if __name__ == "__main__":
    main()
