#!/usr/bin/env python3
"""Race the numba kernels against their pure-numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--n 1000000] [--repeats 3]

Prints one row per kernel with both timings and the speedup.  The
numba column includes a warm-up call so JIT compilation is not billed.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from entropia import kernels
from entropia.backend import HAVE_NUMBA
from entropia.primes import build_table


def _time(fn, *args, repeats=3):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description="entropia kernel benchmark")
    parser.add_argument("--n", type=lambda s: int(float(s)), default=10**6)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    n = args.n

    if not HAVE_NUMBA:
        print("numba not importable; nothing to compare")
        return 1

    table = build_table(n)
    primes = table.primes_up_to(n)
    root_primes = primes[primes <= math.isqrt(n)]
    odd_primes = root_primes[root_primes % 2 == 1]
    recip = 1.0 / primes.astype(np.float64)
    seg = np.ones(1 << 18, dtype=np.bool_)
    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, size=n).astype(np.uint8)
    payload = rng.integers(0, 256, size=n // 16).astype(np.uint8)
    samples = rng.integers(1, n + 1, size=min(n, 10**5)).astype(np.int64)

    cases = [
        ("mark_odd_composites", kernels._nb_mark_odd_composites,
         kernels._np_mark_odd_composites, lambda f: f(seg.copy(), n + 1, odd_primes)),
        ("compensated_sum", kernels._nb_compensated_sum,
         kernels._np_compensated_sum, lambda f: f(recip)),
        ("harmonic_sum", kernels._nb_harmonic_sum,
         kernels._np_harmonic_sum, lambda f: f(n)),
        ("omega_sieve", kernels._nb_omega_sieve,
         kernels._np_omega_sieve, lambda f: f(n, primes)),
        ("square_root_part_sieve", kernels._nb_square_root_part_sieve,
         kernels._np_square_root_part_sieve, lambda f: f(n, root_primes)),
        ("mobius_sieve", kernels._nb_mobius_sieve,
         kernels._np_mobius_sieve, lambda f: f(n, primes)),
        ("spf_sieve", kernels._nb_spf_sieve,
         kernels._np_spf_sieve, lambda f: f(n, primes)),
        ("lz78_phrase_count", kernels._nb_lz78_phrase_count,
         kernels._np_lz78_phrase_count, lambda f: f(bits)),
        ("fnv1a64", kernels._nb_fnv1a64,
         kernels._np_fnv1a64, lambda f: f(payload)),
        ("omega_of_values", kernels._nb_omega_of_values,
         kernels._np_omega_of_values, lambda f: f(samples, root_primes)),
    ]

    print(f"n = {n}, repeats = {args.repeats} (best of)")
    print(f"{'kernel':<24}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for name, nb_fn, np_fn, call in cases:
        call(nb_fn)  # warm up the JIT
        t_nb = _time(lambda: call(nb_fn), repeats=args.repeats)
        t_np = _time(lambda: call(np_fn), repeats=args.repeats)
        print(f"{name:<24}{t_nb:>11.4f}s{t_np:>11.4f}s{t_np / t_nb:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
