#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy/Python fallback.

Times the three hot paths (trajectory fill, keystream generation, block
codec) on both backends and reports the speedup.  The two backends are
bit-identical by contract, so this is purely a throughput comparison;
equality is spot-checked here anyway as a sanity guard.

Usage:
    python benchmarks/bench_backends.py [--samples N] [--repeat R]
"""
import argparse
import time

import numpy as np

from ezcipher import _purekernels as pure

try:
    from ezcipher import _kernels as compiled
except ImportError:
    compiled = None

DEFAULT_ARGS = (0.02, 0.02, 0.02, 10.0, 28.0, 8.0 / 3.0, 0.01)


def best_of(repeat, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeat):
        started = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - started)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=1_000_000,
                        help="workload size per kernel (default 1e6)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions, best time kept (default 3)")
    args = parser.parse_args()

    if compiled is None:
        print("compiled extension not built; run `pip install -e .` first")
        return 1

    n = args.samples
    rng = np.random.default_rng(1)
    y = rng.uniform(-20.0, 20.0, n)
    modulus = float(np.max(np.abs(y)))

    cases = [
        ("trajectory", (*DEFAULT_ARGS, n)),
        ("keystream", (*DEFAULT_ARGS, 0, n, 0, 1.0)),
        ("encode_blocks", (y, modulus, 65536)),
    ]

    print(f"workload: {n:,} samples, best of {args.repeat}")
    print(f"{'kernel':<16} {'compiled':>12} {'pure':>12} {'speedup':>9}")
    for name, call_args in cases:
        t_c, r_c = best_of(args.repeat, getattr(compiled, name), *call_args)
        t_p, r_p = best_of(args.repeat, getattr(pure, name), *call_args)
        if isinstance(r_c, tuple):
            identical = all(np.array_equal(a, b) for a, b in zip(r_c, r_p))
        else:
            identical = np.array_equal(r_c, r_p)
        flag = "" if identical else "  MISMATCH!"
        print(f"{name:<16} {t_c:>11.4f}s {t_p:>11.4f}s {t_p / t_c:>8.1f}x{flag}")

    c, k = compiled.encode_blocks(y, modulus, 65536)
    t_c, d_c = best_of(args.repeat, compiled.decode_blocks, c, k, modulus, 65536)
    t_p, d_p = best_of(args.repeat, pure.decode_blocks, c, k, modulus, 65536)
    flag = "" if np.array_equal(d_c, d_p) else "  MISMATCH!"
    print(f"{'decode_blocks':<16} {t_c:>11.4f}s {t_p:>11.4f}s {t_p / t_c:>8.1f}x{flag}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
