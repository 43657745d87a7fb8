"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Workloads:
  rank       dense random 64x64 and 200x400 matrices over GF(2) and GF(257)
  rref       the same matrices reduced to echelon form
  weakly-mds every cyclic window of every ED-matrix with 1 <= m0 <= n <= 64
"""

import argparse
import importlib
import time

import numpy as np

from ringstore import _pykernels
from ringstore.edmatrix import _ed_array


def backends():
    mods = [_pykernels]
    try:
        mods.append(importlib.import_module("ringstore._ckernels"))
    except ImportError:
        print("compiled extension not built; benchmarking the fallback only")
    return mods


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def rank_job(mod, mats):
    def run():
        for a, p in mats:
            mod.rank(a.copy(), p)
    return run


def rref_job(mod, mats):
    def run():
        for a, p in mats:
            mod.rref(a.copy(), p)
    return run


def weakly_mds_job(mod, eds):
    def run():
        for g in eds:
            w, n = g.shape
            mod.window_ranks(g, np.arange(n, dtype=np.int64), w, 2)
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    mats = [
        (np.ascontiguousarray(rng.integers(0, p, size=shape), dtype=np.int64), p)
        for shape in ((64, 64), (200, 400))
        for p in (2, 257)
    ]
    eds = [
        np.ascontiguousarray(_ed_array(m0, n))
        for n in range(1, 65)
        for m0 in range(1, n + 1)
    ]
    jobs = {
        "rank": lambda mod: rank_job(mod, mats),
        "rref": lambda mod: rref_job(mod, mats),
        "weakly-mds": lambda mod: weakly_mds_job(mod, eds),
    }
    mods = backends()
    print(f"{'workload':<12}" + "".join(f"{m.NAME:>12}" for m in mods) + ("     speedup" if len(mods) > 1 else ""))
    for name, make in jobs.items():
        times = [timed(make(mod), args.repeat) for mod in mods]
        row = f"{name:<12}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
