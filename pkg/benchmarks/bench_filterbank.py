"""Compare the compiled filterbank kernel against the pure-numpy fallback.

Run: python3 benchmarks/bench_filterbank.py
"""
import time

import numpy as np

from bciwheel.wavelets.backend import get_backends
from bciwheel.wavelets.filters import get_filter

N = 4000  # one 4 s window at 1000 Hz
DEPTH = 6
REPS = 50


def wp_cascade(kern, x, lo, hi, depth):
    level = [x]
    for _ in range(depth):
        nxt = []
        for node in level:
            a, d = kern.analysis_pair(node, lo, hi)
            nxt.extend((a, d))
        level = nxt
    return level


def main():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(N)
    filt = get_filter("db7")
    lo, hi = filt.lowpass, filt.highpass

    results = {}
    for name, kern in get_backends().items():
        wp_cascade(kern, x, lo, hi, DEPTH)  # warm-up
        t0 = time.perf_counter()
        for _ in range(REPS):
            leaves = wp_cascade(kern, x, lo, hi, DEPTH)
        dt = (time.perf_counter() - t0) / REPS
        results[name] = dt
        print(f"{name:>10}: {dt * 1e3:8.3f} ms per depth-{DEPTH} decomposition "
              f"({len(leaves)} leaves)")

    if len(results) == 2 and "compiled" in results:
        other = next(k for k in results if k != "compiled")
        print(f"speedup: {results[other] / results['compiled']:.1f}x")


if __name__ == "__main__":
    main()
