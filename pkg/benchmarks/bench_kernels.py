#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot kernels on a synthetic digraph sized like the real
1-BCC trust graph (~5.3k nodes, ~18k edges), plus a full betweenness run
on an ego-subnetwork-sized graph. Usage:

    python benchmarks/bench_kernels.py [--nodes N] [--edges M] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bcctrust.kernels import _pykernels

try:
    from bcctrust.kernels import _ckernels
except ImportError:
    _ckernels = None


def build_csr(rng: np.random.Generator, n: int, m: int):
    src = rng.integers(0, n, size=m * 2)
    dst = rng.integers(0, n, size=m * 2)
    keep = src != dst
    pairs = np.unique(np.stack([src[keep], dst[keep]], axis=1), axis=0)[:m]
    src, dst = pairs[:, 0], pairs[:, 1]

    def csr(rows, cols):
        order = np.lexsort((cols, rows))
        indptr = np.zeros(n + 1, dtype=np.int32)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return indptr, cols[order].astype(np.int32)

    return csr(src, dst), csr(dst, src), len(src)


def bench(label: str, fn, repeat: int) -> float:
    best = min(timed(fn) for _ in range(repeat))
    print(f"  {label:<28s} {best * 1000:10.2f} ms")
    return best


def timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=5290)
    parser.add_argument("--edges", type=int, default=17838)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    (oip, oidx), (iip, iidx), m = build_csr(rng, args.nodes, args.edges)
    n = args.nodes
    x = rng.random(n)
    sources = rng.integers(0, n, size=200)

    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels unavailable; benchmarking the fallback only")

    results: dict[str, dict[str, float]] = {}
    for name, impl in backends:
        print(f"{name} backend  ({n} nodes, {m} edges)")
        results[name] = {
            "bfs x200": bench(
                "bfs_distances x200",
                lambda impl=impl: [impl.bfs_distances(oip, oidx, n, int(s)) for s in sources],
                args.repeat,
            ),
            "matvec x200": bench(
                "adj_matvec x200",
                lambda impl=impl: [impl.adj_matvec(oip, oidx, x) for _ in range(200)],
                args.repeat,
            ),
            "betweenness": bench(
                "brandes_betweenness",
                lambda impl=impl: impl.brandes_betweenness(oip, oidx, iip, iidx, n),
                args.repeat if name == "cython" else 1,
            ),
        }

    if len(results) == 2:
        print("speedup (python / cython)")
        for key in results["python"]:
            ratio = results["python"][key] / results["cython"][key]
            print(f"  {key:<28s} {ratio:10.1f}x")


if __name__ == "__main__":
    main()
