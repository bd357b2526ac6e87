#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both paths are called directly, so the CMVIRIAL_DISABLE_NUMBA flag does not
matter here. The first numba call (compilation or cache load) is excluded.
"""
import argparse
import time

import numpy as np

from cmvirial import kernels
from cmvirial._jit import HAVE_NUMBA


def best_of(fn, repeat):
    fn()  # warm up
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    cases = []
    for size in (64, 512, 4096):
        cases.append(
            (
                f"quartic_bands even, {size} functions",
                lambda s=size: kernels.quartic_bands_np(s, 1.0, 1.44, True),
                lambda s=size: kernels.quartic_bands_jit(s, 1.0, 1.44, True),
            )
        )
    for steps in (4000, 8000):
        cases.append(
            (
                f"numerov_even, {steps} steps",
                lambda n=steps: kernels.numerov_even_np(1.06, 1.0, 6.0, n),
                lambda n=steps: kernels.numerov_even_jit(1.06, 1.0, 6.0, n),
            )
        )

    print(f"{'kernel':<36}{'numpy [ms]':>12}{'numba [ms]':>12}{'speed-up':>10}")
    for label, slow, fast in cases:
        a, b = slow(), fast()
        np.testing.assert_allclose(np.asarray(a, float), np.asarray(b, float), rtol=1e-9)
        t_np, t_jit = best_of(slow, args.repeat), best_of(fast, args.repeat)
        print(f"{label:<36}{t_np * 1e3:>12.3f}{t_jit * 1e3:>12.3f}{t_np / t_jit:>10.1f}")


if __name__ == "__main__":
    main()
