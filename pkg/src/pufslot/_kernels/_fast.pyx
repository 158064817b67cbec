# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pure.py``."""

import numpy as np

from libc.math cimport sqrt
from libc.stdlib cimport malloc, free, qsort
from libc.stdint cimport int64_t, uint64_t


cdef inline uint64_t _parity(uint64_t x) noexcept nogil:
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


cdef inline uint64_t _step(uint64_t state, uint64_t tapmask, uint64_t mask) noexcept nogil:
    return ((state << 1) | _parity(state & tapmask)) & mask


def lfsr_advance(uint64_t state, int order, uint64_t tapmask, long long steps):
    cdef uint64_t mask = (<uint64_t>1 << order) - 1
    cdef long long i
    with nogil:
        for i in range(steps):
            state = _step(state, tapmask, mask)
    return state


def lfsr_period(int order, uint64_t tapmask, uint64_t start):
    cdef uint64_t mask = (<uint64_t>1 << order) - 1
    cdef uint64_t limit = <uint64_t>1 << order
    cdef uint64_t state = start
    cdef uint64_t k
    cdef uint64_t found = 0
    with nogil:
        for k in range(1, limit + 1):
            state = _step(state, tapmask, mask)
            if state == start:
                found = k
                break
    return found


def signature_table(int order, uint64_t tapmask):
    cdef int64_t n = <int64_t>1 << order
    cdef uint64_t mask = <uint64_t>(n - 1)
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] view = out
    cdef int64_t seed
    cdef int i
    cdef uint64_t state
    with nogil:
        for seed in range(n):
            state = <uint64_t>seed if seed else mask
            for i in range(order):
                state = _step(state, tapmask, mask)
            view[seed] = <int64_t>state
    return out


def window_std(values, int window):
    cdef const int64_t[::1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t m = n - window + 1
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef int64_t s1 = 0, s2 = 0, num
    cdef Py_ssize_t i
    with nogil:
        for i in range(window):
            s1 += v[i]
            s2 += v[i] * v[i]
        for i in range(m):
            if i > 0:
                s1 += v[i + window - 1] - v[i - 1]
                s2 += v[i + window - 1] * v[i + window - 1] - v[i - 1] * v[i - 1]
            num = window * s2 - s1 * s1
            o[i] = sqrt(<double>num) / window if num > 0 else 0.0
    return out


cdef int _cmp(const void* a, const void* b) noexcept nogil:
    cdef int64_t x = (<int64_t*>a)[0]
    cdef int64_t y = (<int64_t*>b)[0]
    return (x > y) - (x < y)


cdef inline bint _row_has_duplicate(int64_t* buf, Py_ssize_t cols) noexcept nogil:
    cdef Py_ssize_t c, k
    cdef int64_t x
    if cols > 64:
        qsort(buf, cols, sizeof(int64_t), _cmp)
        for c in range(1, cols):
            if buf[c] == buf[c - 1]:
                return True
        return False
    # insertion sort, bailing out on the first equal pair
    for c in range(1, cols):
        x = buf[c]
        k = c - 1
        while k >= 0 and buf[k] > x:
            buf[k + 1] = buf[k]
            k -= 1
        if k >= 0 and buf[k] == x:
            return True
        buf[k + 1] = x
    return False


def count_duplicate_rows(draws):
    cdef const int64_t[:, ::1] d = np.ascontiguousarray(draws, dtype=np.int64)
    cdef Py_ssize_t rows = d.shape[0], cols = d.shape[1]
    cdef Py_ssize_t r, c
    cdef long long hits = 0
    cdef int64_t lo = 0, hi = 0, v
    cdef int64_t* stamp = NULL
    if cols < 2 or rows == 0:
        return 0
    with nogil:
        lo = hi = d[0, 0]
        for r in range(rows):
            for c in range(cols):
                v = d[r, c]
                if v < lo:
                    lo = v
                if v > hi:
                    hi = v
    if hi - lo < (1 << 22):
        # small value range: last-seen row stamp per value
        stamp = <int64_t*>malloc((hi - lo + 1) * sizeof(int64_t))
        if stamp == NULL:
            raise MemoryError()
        try:
            with nogil:
                for v in range(hi - lo + 1):
                    stamp[v] = -1
                for r in range(rows):
                    for c in range(cols):
                        v = d[r, c] - lo
                        if stamp[v] == r:
                            hits += 1
                            break
                        stamp[v] = r
        finally:
            free(stamp)
        return hits
    cdef int64_t* buf = <int64_t*>malloc(cols * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for r in range(rows):
                for c in range(cols):
                    buf[c] = d[r, c]
                if _row_has_duplicate(buf, cols):
                    hits += 1
    finally:
        free(buf)
    return hits


def tick_count(double f_ref, double f_clk, long long ref_cycles, int bits):
    cdef uint64_t mask = (<uint64_t>1 << bits) - 1
    cdef uint64_t count = 0
    cdef long long j = 1, k
    cdef double edge
    with nogil:
        for k in range(1, ref_cycles + 1):
            edge = k * f_clk
            while j * f_ref <= edge:
                count = (count + 1) & mask
                j += 1
    return count


def tick_until(uint64_t target, int bits):
    cdef uint64_t mask = (<uint64_t>1 << bits) - 1
    cdef uint64_t counter = 0
    cdef long long ticks = 0
    with nogil:
        while counter != target:
            counter = (counter + 1) & mask
            ticks += 1
            if <uint64_t>ticks > mask + 1:
                ticks = -1
                break
    return ticks
