"""Time the numba kernels against the pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is run once untimed under numba so compilation is excluded.
"""
import argparse
import time

import numpy as np

from tautile import _accel
from tautile.hecke import CoxeterSpec, group_data
from tautile.kernels import fraction_free_rref, hecke_product_table, rref_mod_p


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng):
    small = rng.integers(-3, 4, size=(10, 10))  # stays inside int64
    modp = rng.integers(0, 10007, size=(200, 200))
    g = group_data(CoxeterSpec("A", 4))
    return [
        ("fraction-free rref 10x10", lambda: fraction_free_rref(small)),
        ("rref mod 10007 200x200", lambda: rref_mod_p(modp, 10007)),
        ("0-Hecke table S5 (120x120)", lambda: hecke_product_table(g.left, g.up, g.words, g.lengths)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32s} {'numba (ms)':>12s} {'numpy (ms)':>12s} {'speedup':>8s}")
    for name, fn in cases(rng):
        _accel.set_numba(True)
        fn()  # compile
        t_nb = best_of(fn, args.repeat)
        _accel.set_numba(False)
        t_np = best_of(fn, args.repeat)
        _accel.set_numba(True)
        print(f"{name:32s} {t_nb * 1e3:12.2f} {t_np * 1e3:12.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
