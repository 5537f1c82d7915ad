"""Compare the numba and numpy kernels.

    python3 bench/benchmark.py [--repeat 5] [--sizes 8 64 512]

Times the Algorithm A scan on random piece masses of several sizes and
one grid-oracle level for each piece count, checks that both paths give
identical results, and prints a table with the speed-up.
"""
import argparse
import time

import numpy as np

from orlicz_lorentz import ExpM, Power
from orlicz_lorentz.kernels import algorithm_a_nb, algorithm_a_np, grid_level_nb, grid_level_np


def best_of(func, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = func()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_algorithm_a(sizes, repeat, rng):
    rows = []
    for n in sizes:
        fm = np.sort(rng.uniform(0.05, 5.0, n))[::-1] * rng.uniform(0.1, 2.0, n)
        wm = rng.uniform(0.05, 3.0, n)
        algorithm_a_nb(fm, wm, 1e-12, 0.0)  # compile / load cache
        t_nb, (c1, g1) = best_of(lambda: algorithm_a_nb(fm, wm, 1e-12, 0.0), repeat)
        t_np, (c2, g2) = best_of(lambda: algorithm_a_np(fm, wm, 1e-12, 0.0), repeat)
        same = np.array_equal(c1, c2) and np.array_equal(g1, g2)
        rows.append((f"algorithm_a n={n}", t_nb, t_np, same))
    return rows


def bench_grid(pieces, points, repeat, rng):
    rows = []
    for phi in (Power(2.0, 1.0), ExpM()):
        code, p, c = phi.kernel_params()
        for n in pieces:
            a = np.sort(rng.uniform(0.1, 2.0, n))[::-1]
            lens = rng.uniform(0.2, 2.0, n)
            Wk = np.cumsum(rng.uniform(0.2, 2.0, n))
            top = Wk / np.cumsum(lens)
            args = (a, lens, Wk, top / points, top, points)
            grid_level_nb(*args, code, float(p), float(c))
            t_nb, (v1, _) = best_of(lambda: grid_level_nb(*args, code, float(p), float(c)), repeat)
            t_np, (v2, _) = best_of(lambda: grid_level_np(*args, phi), repeat)
            same = abs(v1 - v2) <= 1e-12 * max(abs(v1), abs(v2))
            rows.append((f"grid level {phi.family} n={n}", t_nb, t_np, same))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 64, 512, 2048])
    ap.add_argument("--pieces", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    rows = bench_algorithm_a(args.sizes, args.repeat, rng)
    rows += bench_grid(args.pieces, args.points, args.repeat, rng)
    print(f"{'kernel':<28} {'numba [ms]':>11} {'numpy [ms]':>11} {'speed-up':>9}  agree")
    for name, t_nb, t_np, same in rows:
        print(f"{name:<28} {1e3 * t_nb:>11.3f} {1e3 * t_np:>11.3f} {t_np / t_nb:>8.1f}x  {same}")
    return 0 if all(r[3] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
