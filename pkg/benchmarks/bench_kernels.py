"""Time each hot kernel under the compiled core and the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from pufslot._kernels import _pure

try:
    from pufslot._kernels import _fast
except ImportError:
    _fast = None

TAPS17 = (1 << 16) | (1 << 13)
TAPS9 = (1 << 8) | (1 << 4)


def cases():
    rng = np.random.default_rng(0)
    table17 = _pure.signature_table(17, TAPS17) if _fast is None else _fast.signature_table(17, TAPS17)
    draws = rng.integers(0, 512, size=(100_000, 26))
    return [
        ("lfsr_period PRBS17", lambda k: k.lfsr_period(17, TAPS17, 1)),
        ("signature_table PRBS17", lambda k: k.signature_table(17, TAPS17)),
        ("window_std 2^17 w=16", lambda k: k.window_std(table17, 16)),
        ("count_duplicate_rows 1e5x26", lambda k: k.count_duplicate_rows(draws)),
        ("tick_count 2^18 ref cycles", lambda k: k.tick_count(10_000.0, 20_123.4, 1 << 18, 9)),
        ("tick_until 2^20", lambda k: k.tick_until(1 << 20, 22)),
    ]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':32s} {'pure [s]':>10s} {'compiled [s]':>13s} {'speedup':>8s}")
    for name, fn in cases():
        tp = best_of(lambda: fn(_pure), args.repeat)
        if _fast is None:
            print(f"{name:32s} {tp:10.4f} {'n/a':>13s}")
            continue
        tf = best_of(lambda: fn(_fast), args.repeat)
        print(f"{name:32s} {tp:10.4f} {tf:13.5f} {tp / tf:7.0f}x")


if __name__ == "__main__":
    main()
