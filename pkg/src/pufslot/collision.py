"""Birthday-style slot-collision probability for n nodes drawing N-bit values.

The closed form ``1 - (2^N)! / (2^(nN) (2^N - n)!)`` equals
``1 - prod_{k<n} (1 - k/2^N)``. It is accumulated as
``p_n = p_{n-1} + (1 - p_{n-1}) (n-1) / 2^N`` with ``p_1 = 0``: every term is
non-negative, so small probabilities keep full relative precision, p_2 is
exactly 2^-N, and no factorial is ever formed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import _kernels

RATIONAL_MAX_ORDER = 8
MC_CHUNK = 10_000


class Method(str, Enum):
    EXACT = "exact"
    RATIONAL = "rational-oracle"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class CollisionQuery:
    order: int
    nodes: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if self.nodes < 0:
            raise ValueError(f"nodes must be >= 0, got {self.nodes}")


@dataclass(frozen=True)
class CollisionEstimate:
    probability: float
    method: Method
    trials: int = 0
    std_error: float = 0.0


def _accumulate(order: int, nodes: int) -> float:
    slots = float(1 << order)
    p = 0.0
    for k in range(1, nodes):
        p += (1.0 - p) * (k / slots)
    return p


def collision_probability_exact(order: int, nodes: int) -> CollisionEstimate:
    q = CollisionQuery(order, nodes)
    if q.nodes < 2:
        p = 0.0
    elif q.nodes > (1 << q.order):
        p = 1.0
    else:
        p = _accumulate(q.order, q.nodes)
    return CollisionEstimate(min(max(p, 0.0), 1.0), Method.EXACT)


def collision_probability_rational(order: int, nodes: int) -> Fraction:
    """Exact rational value using big integers; the oracle for small orders."""
    q = CollisionQuery(order, nodes)
    slots = 1 << q.order
    if q.order > RATIONAL_MAX_ORDER:
        raise ValueError(f"rational oracle limited to order <= {RATIONAL_MAX_ORDER}, got {q.order}")
    if q.nodes > slots:
        return Fraction(1)
    falling = math.perm(slots, q.nodes)
    return 1 - Fraction(falling, slots**q.nodes)


def nodes_supported(order: int, threshold: float = 0.5) -> int:
    """Largest n whose collision probability stays below ``threshold``."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    slots = float(1 << order)
    # same recurrence as the exact path, stopping at the first n that fails
    p = 0.0
    n = 1
    while n < (1 << order):
        p += (1.0 - p) * (n / slots)
        if p >= threshold:
            break
        n += 1
    return n


def _mc_chunk(order: int, nodes: int, size: int, rng_seed: int, index: int) -> int:
    rng = np.random.default_rng(np.random.SeedSequence(rng_seed, spawn_key=(index,)))
    draws = rng.integers(0, 1 << order, size=(size, nodes), dtype=np.int64)
    return int(_kernels.count_duplicate_rows(draws))


def monte_carlo_collision(
    order: int, nodes: int, trials: int, rng_seed: int, workers: int = 1
) -> CollisionEstimate:
    """Fraction of trials in which ``nodes`` uniform ``order``-bit draws repeat.

    Trials are split into fixed-size chunks, chunk ``i`` drawing from the
    stream ``SeedSequence(rng_seed, spawn_key=(i,))``; the estimate therefore
    does not depend on ``workers``.
    """
    q = CollisionQuery(order, nodes)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if q.order > 62:
        raise ValueError("monte carlo draws are limited to order <= 62")
    sizes = [MC_CHUNK] * (trials // MC_CHUNK)
    if trials % MC_CHUNK:
        sizes.append(trials % MC_CHUNK)
    jobs = [(q.order, q.nodes, size, rng_seed, i) for i, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda a: _mc_chunk(*a), jobs))
    else:
        hits = sum(_mc_chunk(*a) for a in jobs)
    p = hits / trials
    return CollisionEstimate(p, Method.MONTE_CARLO, trials, math.sqrt(p * (1 - p) / trials))
