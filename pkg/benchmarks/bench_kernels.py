"""Time the collide/stream kernel on each available backend.

    python3 benchmarks/bench_kernels.py [--sizes 64,128,256] [--steps 200]

Prints million lattice-node updates per second (MLUPS) per backend and size,
and checks the backends agree on the result.
"""
import argparse
import time

import numpy as np

from lbm_bounce import kernels
from lbm_bounce.lattice import SchemeParams, population_collision_matrix


def time_kernel(kernel, f0, C, steps):
    f = f0.copy()
    fstar, fout = np.empty_like(f), np.empty_like(f)
    kernel(f, C, fstar, fout)  # warm-up
    start = time.perf_counter()
    for _ in range(steps):
        kernel(f, C, fstar, fout)
        f, fout = fout, f
    elapsed = time.perf_counter() - start
    return f, elapsed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,128,256")
    ap.add_argument("--steps", type=int, default=200)
    args = ap.parse_args()

    p = SchemeParams(s3=1.1, s4=1.2, s7=1.3, s8=1.4)
    C = np.ascontiguousarray(population_collision_matrix(p))
    rng = np.random.default_rng(0)
    print(f"{'n':>6} {'backend':>8} {'MLUPS':>10} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        f0 = rng.random((9, n, n))
        results = {}
        for name, kernel in kernels.BACKENDS.items():
            f, elapsed = time_kernel(kernel, f0, C, args.steps)
            results[name] = (f, n * n * args.steps / elapsed / 1e6)
        base = results["python"][1]
        for name, (f, mlups) in results.items():
            print(f"{n:>6} {name:>8} {mlups:>10.2f} {mlups / base:>8.2f}")
        if "cython" in results:
            diff = np.abs(results["cython"][0] - results["python"][0]).max()
            print(f"{n:>6} max |cython - python| = {diff:.2e}")


if __name__ == "__main__":
    main()
