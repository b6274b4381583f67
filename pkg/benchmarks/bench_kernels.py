"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The numba variants are called once first so compilation is excluded.
"""

import argparse
import time

import numpy as np

from kleinian import kernels
from kleinian._accel import HAVE_NUMBA


def best_of(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng):
    c = rng.normal(size=1500) + 1j * rng.normal(size=1500)
    r = rng.uniform(0.01, 0.1, 1500)
    yield "pairwise_margins 1500x1500", (c, r, c, r)

    gens = rng.normal(size=(6, 2, 2)) + 1j * rng.normal(size=(6, 2, 2))
    words = rng.integers(0, 6, size=(50_000, 10))
    yield "word_products 50k x 10", (gens, words)

    yield "slope_census L=400", (1 + 0j, 0.3 + 1.1j, 400.0, 420, 420)

    pts = np.array([2 * i + (1 + 1j * np.sqrt(3)) * j for i in range(150) for j in range(150)])
    yield "tangent_pairs 22500 circles", (pts, np.ones(pts.size), 1e-9)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba not installed; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>8s}")
    for label, call in cases(rng):
        name = label.split()[0]
        t_np = best_of(lambda: getattr(kernels, name + "_numpy")(*call), args.repeat)
        t_nb = best_of(lambda: getattr(kernels, name + "_numba")(*call), args.repeat)
        print(f"{label:32s} {t_np * 1e3:12.2f} {t_nb * 1e3:12.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
