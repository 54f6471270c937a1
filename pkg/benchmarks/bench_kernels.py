"""Time the numba kernels against their pure-numpy fallbacks.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]

Prints one row per case with both timings, the speedup, and a correctness
check (the two implementations must return identical arrays).  Without
numba installed the script still runs and reports the fallback timings.
"""

import argparse
import time

import numpy as np

from subhull import kernels


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_windows(rng, repeats, have_numba):
    rows = []
    for p, ell in ((4096, 8), (65536, 12), (262144, 24)):
        codes = rng.integers(0, 3, size=p).astype(np.int64)
        ref = kernels.unique_cyclic_windows_numpy(codes, ell)
        t_np = best_of(lambda: kernels.unique_cyclic_windows_numpy(codes, ell), repeats)
        if have_numba:
            jit = kernels.unique_cyclic_windows_numba(codes, ell)
            match = jit.shape == ref.shape and bool((jit == ref).all())
            t_nb = best_of(lambda: kernels.unique_cyclic_windows_numba(codes, ell), repeats)
        else:
            match, t_nb = None, None
        rows.append((f"unique_cyclic_windows p={p} ell={ell}", t_np, t_nb, match))
    return rows


def bench_traces(rng, repeats, have_numba):
    rows = []
    for m, p in ((20000, 21), (200000, 55), (200000, 233)):
        energies = rng.uniform(-4, 4, size=m)
        potential = rng.uniform(-2, 2, size=p)
        ref = kernels.transfer_traces_numpy(energies, potential)
        t_np = best_of(lambda: kernels.transfer_traces_numpy(energies, potential), repeats)
        if have_numba:
            jit = kernels.transfer_traces_numba(energies, potential)
            match = bool(np.allclose(jit, ref, atol=1e-9))
            t_nb = best_of(lambda: kernels.transfer_traces_numba(energies, potential), repeats)
        else:
            match, t_nb = None, None
        rows.append((f"transfer_traces m={m} p={p}", t_np, t_nb, match))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="best-of repetitions (default 5)")
    args = parser.parse_args()

    try:
        have_numba = kernels.select_backend("numba") == "numba"
    except ImportError:
        have_numba = False
    if have_numba:
        # first calls compile; keep that out of the timings
        warm = np.array([0, 1, 0, 2], dtype=np.int64)
        kernels.unique_cyclic_windows_numba(warm, 2)
        kernels.transfer_traces_numba(np.array([0.0]), np.array([0.0]))
    else:
        print("numba not importable; timing the numpy fallback only")

    rng = np.random.default_rng(20240817)
    rows = bench_windows(rng, args.repeats, have_numba)
    rows += bench_traces(rng, args.repeats, have_numba)

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}  match")
    for name, t_np, t_nb, match in rows:
        if t_nb is None:
            print(f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}  -")
        else:
            print(
                f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms"
                f"  {t_np / t_nb:>7.2f}x  {'yes' if match else 'NO'}"
            )


if __name__ == "__main__":
    main()
