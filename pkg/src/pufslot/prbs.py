"""Fibonacci LFSR engine and the PRBS polynomial registry.

Bit-numbering convention (frozen; every stored test vector depends on it):

* Stage ``k`` (1 <= k <= order) of the register is integer bit ``k - 1`` of the
  state, so tap exponent ``k`` of the generator polynomial reads stage ``k``.
* On each clock the feedback bit (XOR of all tapped stages) enters stage 1,
  every stage moves one place toward the high end, and the pre-shift value of
  stage ``order`` leaves the register as the output bit.

In integer terms: ``out = s >> (order-1) & 1``;
``s' = ((s << 1) | parity(s & tapmask)) & (2**order - 1)``.

This is the usual hardware drawing of PRBS-N (feedback from stages N and k
into stage 1), under which x^9+x^5+1 and x^17+x^14+1 are maximal-length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels

MIN_ORDER = 5
MAX_ORDER = 17


class UnsupportedOrderError(ValueError):
    """Raised for a PRBS order outside the registry."""


@dataclass(frozen=True)
class FeedbackPolynomial:
    """Generator polynomial ``x^order + sum(x^t for t in taps if t != order) + 1``."""

    order: int
    taps: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "taps", frozenset(int(t) for t in self.taps))
        if not 1 <= self.order <= 32:
            raise ValueError(f"order must be in [1, 32], got {self.order}")
        if self.order not in self.taps:
            raise ValueError(f"taps must contain the leading exponent {self.order}")
        bad = sorted(t for t in self.taps if not 1 <= t <= self.order)
        if bad:
            raise ValueError(f"tap exponents {bad} outside [1, {self.order}]")

    @property
    def mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def tapmask(self) -> int:
        m = 0
        for t in self.taps:
            m |= 1 << (t - 1)
        return m

    def __str__(self):
        terms = [f"x^{t}" for t in sorted(self.taps, reverse=True)]
        return " + ".join(terms + ["1"])


# Orders other than 9 and 17 come from the widely reproduced maximal-length
# table (Xilinx XAPP052 / Wikipedia "Linear-feedback shift register").
# Maximality of every entry is re-verified by exhaustive enumeration in tests.
TAP_TABLE: dict[int, tuple[int, ...]] = {
    5: (5, 3),
    6: (6, 5),
    7: (7, 6),
    8: (8, 6, 5, 4),
    9: (9, 5),
    10: (10, 7),
    11: (11, 9),
    12: (12, 11, 10, 4),
    13: (13, 12, 11, 8),
    14: (14, 13, 12, 2),
    15: (15, 14),
    16: (16, 15, 13, 4),
    17: (17, 14),
}


def registry_polynomial(order: int) -> FeedbackPolynomial:
    if order not in TAP_TABLE:
        raise UnsupportedOrderError(
            f"PRBS order {order} unsupported; registry covers {MIN_ORDER}..{MAX_ORDER}"
        )
    return FeedbackPolynomial(order, frozenset(TAP_TABLE[order]))


@dataclass(frozen=True)
class LfsrState:
    bits: int
    order: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.order):
            raise ValueError(f"state {self.bits} does not fit in {self.order} bits")

    @property
    def degenerate(self) -> bool:
        # the all-zero register is a fixed point of any pure-XOR feedback
        return self.bits == 0


def lfsr_step(state: int | LfsrState, poly: FeedbackPolynomial) -> tuple[int, int]:
    """Clock the register once. Returns ``(next_state, output_bit)``."""
    s = state.bits if isinstance(state, LfsrState) else int(state)
    if not 0 <= s <= poly.mask:
        raise ValueError(f"state {s} does not fit in {poly.order} bits")
    out = (s >> (poly.order - 1)) & 1
    fb = bin(s & poly.tapmask).count("1") & 1
    return ((s << 1) | fb) & poly.mask, out


def lfsr_sequence(seed: int, poly: FeedbackPolynomial, nbits: int) -> list[int]:
    """The first ``nbits`` serial output bits starting from ``seed``."""
    bits = []
    s = seed
    for _ in range(nbits):
        s, b = lfsr_step(s, poly)
        bits.append(b)
    return bits


def load_seed(seed: int, poly: FeedbackPolynomial) -> int:
    """Register contents after loading ``seed``; zero is remapped to all-ones."""
    if not 0 <= seed <= poly.mask:
        raise ValueError(f"seed {seed} does not fit in {poly.order} bits")
    return seed if seed else poly.mask


def signature_from_seed(seed: int, poly: FeedbackPolynomial) -> int:
    """Device signature: the register after ``order`` clocks from ``seed``."""
    return int(_kernels.lfsr_advance(load_seed(seed, poly), poly.order, poly.tapmask, poly.order))


def period(poly: FeedbackPolynomial) -> int:
    """Cycle length of the orbit through state 1.

    The leading tap reads the outgoing stage, so the step is invertible and
    every state lies on a cycle. Exhaustive; intended for order <= 17.
    """
    return int(_kernels.lfsr_period(poly.order, poly.tapmask, 1))


def is_maximal(poly: FeedbackPolynomial) -> bool:
    return period(poly) == poly.mask


@lru_cache(maxsize=None)
def _signature_table(order: int, taps: frozenset[int]) -> np.ndarray:
    poly = FeedbackPolynomial(order, taps)
    table = _kernels.signature_table(order, poly.tapmask)
    table.setflags(write=False)
    return table


def signature_table(poly: FeedbackPolynomial) -> np.ndarray:
    """Signatures for every seed ``0 .. 2**order - 1`` (read-only, cached)."""
    return _signature_table(poly.order, poly.taps)
