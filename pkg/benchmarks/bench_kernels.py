"""Time the numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]

Kernel timings exclude the first (JIT-compiling) call.  ``--end-to-end``
also times a few CLI commands in subprocesses with and without
SURFSIG_DISABLE_NUMBA=1.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from surfsig import _kernels
from surfsig.classes import conjugacy_classes
from surfsig.groups import build_psl2


def _best(fn, repeat: int) -> float:
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_cases():
    G = build_psl2(11)
    T = conjugacy_classes(G)
    tab, inv, orders = G.table, G.inverses, G.orders
    a = T.members_array(T.class_id("5A"))
    b = T.members_array(T.class_id("6A"))
    rng = np.random.default_rng(0)
    counts = rng.integers(0, 9, size=G.order).astype(np.int64)
    xs = np.arange(G.order, dtype=np.int64)
    gens = np.array(sorted(rng.choice(G.order, 2, replace=False)), dtype=np.int64)
    coins = np.array([660, 165, 220, 264, 275, 300], dtype=np.int64)
    return {
        "closure": lambda k: k.closure(tab, gens, G.identity, G.order),
        "element_orders": lambda k: k.element_orders(tab, G.identity),
        "pair_product_hist": lambda k: k.pair_product_hist(tab, a, b),
        "convolve_right": lambda k: k.convolve_right(tab, counts, a),
        "coin_ways": lambda k: k.coin_ways(200_000, coins),
        "find_commutator(7)": lambda k: k.find_commutator(tab, inv, orders, 7, xs),
    }


END_TO_END = [
    ["stable-genus", "psl2:11"],
    ["epi", "psl2:7", "(0;2,2,2,2,2)"],
    ["epi", "psl2:11", "(0;2,2,2,3)"],
    ["maximal", "psl2:11"],
]


def end_to_end(repeat: int) -> None:
    print(f"\n{'command':40s} {'numba s':>9s} {'numpy s':>9s}")
    for argv in END_TO_END:
        row = []
        for disable in ("0", "1"):
            env = dict(os.environ, SURFSIG_DISABLE_NUMBA=disable)
            best = float("inf")
            for _ in range(repeat):
                t = time.perf_counter()
                subprocess.run([sys.executable, "-m", "surfsig", *argv], env=env, capture_output=True)
                best = min(best, time.perf_counter() - t)
            row.append(best)
        print(f"{' '.join(argv):40s} {row[0]:9.3f} {row[1]:9.3f}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)

    backs = _kernels.backends()
    if "numba" not in backs:
        print("numba backend unavailable; only numpy timings shown")
    names = [n for n in ("numba", "numpy") if n in backs]
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'kernel':22s} " + " ".join(f"{n + ' ms':>11s}" for n in names) + f" {'speedup':>8s}")
    for name, case in kernel_cases().items():
        ts = [_best(lambda: case(backs[n]), args.repeat) for n in names]
        speed = f"{ts[1] / ts[0]:8.1f}x" if len(ts) == 2 else ""
        print(f"{name:22s} " + " ".join(f"{1e3 * t:11.3f}" for t in ts) + f" {speed}")
    if args.end_to_end:
        end_to_end(max(1, args.repeat // 2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
