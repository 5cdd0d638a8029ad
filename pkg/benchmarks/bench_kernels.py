"""Compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row is the best of ``--repeat`` timings. The last rows time the full
bound suite on one matrix with whichever backend is active.
"""

import argparse
import timeit

import numpy as np

from selfcomm import _kernels_py, bounds
from selfcomm.linalg import BACKEND

try:
    from selfcomm import _kernels as compiled
except ImportError:
    compiled = None


def cases(rng):
    for n in (2, 4, 8, 16):
        A = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        H = (A + A.conj().T) / 2
        stack = np.ascontiguousarray(np.broadcast_to(H, (256, n, n)))
        phis = 2 * np.pi * np.arange(1024) / 1024
        yield f"eigh_batch 256 x {n}x{n}", lambda k, s=stack: k.eigh_batch(s)
        yield f"rotated_extremes 1024 angles, n={n}", lambda k, A=A: k.rotated_extremes(A, phis)
        yield f"rotated_boundary 1024 angles, n={n}", lambda k, A=A: k.rotated_boundary(A, phis)
        z0 = complex(np.trace(A) / n)
        yield f"shift_distance_nm n={n}", lambda k, A=A, z0=z0: k.shift_distance_nm(A, z0.real, z0.imag, 0.25)


def best(fn, repeat):
    number = 1
    while True:
        t = timeit.timeit(fn, number=number)
        if t > 0.05 or number >= 1000:
            break
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"active backend: {BACKEND}")
    print(f"{'kernel':<40} {'numpy ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for name, run in cases(rng):
        t_py = best(lambda: run(_kernels_py), args.repeat)
        if compiled is None:
            print(f"{name:<40} {1e3 * t_py:>10.3f} {'n/a':>12} {'':>8}")
            continue
        t_c = best(lambda: run(compiled), args.repeat)
        print(f"{name:<40} {1e3 * t_py:>10.3f} {1e3 * t_c:>12.3f} {t_py / t_c:>7.1f}x")

    for n in (2, 3, 4, 8):
        A = bounds.random_matrix("complex-gaussian", n, rng)
        for label, tol in (("no area refinement", None), ("default area refinement", 1e-7)):
            t = best(lambda A=A, tol=tol: bounds.evaluate_bounds(A, area_tol=tol), args.repeat)
            print(f"evaluate_bounds n={n}, {label:<24} {1e3 * t:>9.2f} ms")


if __name__ == "__main__":
    main()
