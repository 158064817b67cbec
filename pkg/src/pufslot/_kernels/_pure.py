"""Pure-Python/numpy implementations of the hot loops.

Every function here has a twin of the same name and signature in ``_fast.pyx``.
Both must return identical values for identical inputs.
"""

import numpy as np


def _parity(x):
    return bin(x).count("1") & 1


def lfsr_advance(state, order, tapmask, steps):
    mask = (1 << order) - 1
    for _ in range(steps):
        fb = _parity(state & tapmask)
        state = ((state << 1) | fb) & mask
    return state


def lfsr_period(order, tapmask, start):
    """Steps until ``start`` recurs, or 0 if the orbit never returns to it."""
    mask = (1 << order) - 1
    state = start
    limit = 1 << order
    for k in range(1, limit + 1):
        fb = _parity(state & tapmask)
        state = ((state << 1) | fb) & mask
        if state == start:
            return k
    return 0


def signature_table(order, tapmask):
    n = 1 << order
    mask = n - 1
    out = np.empty(n, dtype=np.int64)
    for seed in range(n):
        state = seed if seed else mask
        for _ in range(order):
            fb = _parity(state & tapmask)
            state = ((state << 1) | fb) & mask
        out[seed] = state
    return out


def window_std(values, window):
    v = np.asarray(values, dtype=np.int64)
    # integer prefix sums keep the window moments exact
    s1 = np.concatenate(([0], np.cumsum(v)))
    s2 = np.concatenate(([0], np.cumsum(v * v)))
    w1 = s1[window:] - s1[:-window]
    w2 = s2[window:] - s2[:-window]
    num = (window * w2 - w1 * w1).astype(np.float64)
    return np.sqrt(np.maximum(num, 0.0)) / window


def count_duplicate_rows(draws):
    d = np.sort(np.asarray(draws, dtype=np.int64), axis=1)
    if d.shape[1] < 2:
        return 0
    return int((np.diff(d, axis=1) == 0).any(axis=1).sum())


def tick_count(f_ref, f_clk, ref_cycles, bits):
    """Run the reference and clock counters edge by edge.

    Returns the ``bits``-wide clock counter value at the ``ref_cycles``-th
    reference edge. A clock edge coincident with the reference edge counts.
    """
    mask = (1 << bits) - 1
    count = 0
    j = 1
    for k in range(1, ref_cycles + 1):
        edge = k * f_clk
        while j * f_ref <= edge:
            count = (count + 1) & mask
            j += 1
    return count


def tick_until(target, bits):
    """Number of reference ticks for a ``bits``-wide counter to reach ``target``."""
    mask = (1 << bits) - 1
    counter = 0
    ticks = 0
    while counter != target:
        counter = (counter + 1) & mask
        ticks += 1
        if ticks > mask + 1:
            return -1
    return ticks
