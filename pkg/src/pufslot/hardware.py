"""Behavioral models of the ring oscillators, seed capture and cost scaling."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .prbs import MAX_ORDER, MIN_ORDER, UnsupportedOrderError

RO1_NOMINAL_HZ = 10_000.0
RO2_NOMINAL_HZ = 20_000.0
DEFAULT_SIGMA_FRACTION = 0.02


@dataclass(frozen=True)
class RoSpec:
    nominal_freq: float
    sigma_fraction: float = DEFAULT_SIGMA_FRACTION

    def __post_init__(self):
        if not self.nominal_freq > 0:
            raise ValueError(f"nominal_freq must be > 0, got {self.nominal_freq}")
        if not 0 <= self.sigma_fraction < 0.5:
            raise ValueError(f"sigma_fraction must be in [0, 0.5), got {self.sigma_fraction}")


@dataclass(frozen=True)
class DieSample:
    f1: float  # timing reference RO1
    f2: float  # randomizer clock RO2

    def __post_init__(self):
        if not (self.f1 > 0 and self.f2 > 0):
            raise ValueError(f"frequencies must be positive, got f1={self.f1}, f2={self.f2}")


@dataclass(frozen=True)
class RoPufConfig:
    num_ros: int
    count_window: float

    def __post_init__(self):
        if self.num_ros < 2:
            raise ValueError(f"num_ros must be >= 2, got {self.num_ros}")
        if not self.count_window > 0:
            raise ValueError(f"count_window must be > 0, got {self.count_window}")

    @property
    def challenge_bits(self) -> int:
        return math.ceil(math.log2(self.num_ros))

    def all_challenges(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.num_ros), 2))


@dataclass(frozen=True)
class CostEstimate:
    area_scale: float
    power_scale: float


def _as_rng(rng_seed) -> np.random.Generator:
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


def _positive_normal(rng: np.random.Generator, spec: RoSpec) -> float:
    sigma = spec.sigma_fraction * spec.nominal_freq
    if sigma == 0:
        return float(spec.nominal_freq)
    while True:
        f = rng.normal(spec.nominal_freq, sigma)
        if f > 0:
            return float(f)


def sample_die(spec1: RoSpec, spec2: RoSpec, rng_seed) -> DieSample:
    """Draw one die's RO frequencies.

    ``rng_seed`` is an int (fresh stream) or a ``numpy.random.Generator``
    (continues that stream). f1 is always drawn before f2.
    """
    rng = _as_rng(rng_seed)
    f1 = _positive_normal(rng, spec1)
    f2 = _positive_normal(rng, spec2)
    return DieSample(f1, f2)


def ro_count(freq_clk: float, freq_ref: float, ref_cycles: int) -> int:
    """floor(ref_cycles * freq_clk / freq_ref), exact for any pair of floats."""
    nc, dc = float(freq_clk).as_integer_ratio()
    nr, dr = float(freq_ref).as_integer_ratio()
    return (ref_cycles * nc * dr) // (dc * nr)


def extract_seed(die: DieSample, ref_cycles: int, seed_bits: int) -> int:
    """RO2 counter value (``seed_bits`` wide, free running) after ``ref_cycles`` of RO1."""
    if ref_cycles < 1 or seed_bits < 1:
        raise ValueError("ref_cycles and seed_bits must be >= 1")
    return ro_count(die.f2, die.f1, ref_cycles) % (1 << seed_bits)


def sample_ro_bank(num_ros: int, spec: RoSpec, rng_seed) -> list[float]:
    rng = _as_rng(rng_seed)
    return [_positive_normal(rng, spec) for _ in range(num_ros)]


def traditional_ropuf_response(
    frequencies: list[float], challenges: list[tuple[int, int]], count_window: float
) -> list[int]:
    """One bit per challenge: 1 iff RO i counts strictly more edges than RO j."""
    m = len(frequencies)
    bits = []
    for i, j in challenges:
        if not (0 <= i < m and 0 <= j < m):
            raise IndexError(f"challenge ({i}, {j}) out of range for {m} oscillators")
        if i == j:
            raise ValueError(f"challenge ({i}, {j}) compares an oscillator with itself")
        ci = math.floor(frequencies[i] * count_window)
        cj = math.floor(frequencies[j] * count_window)
        bits.append(1 if ci > cj else 0)
    return bits


def estimate_cost(order: int) -> CostEstimate:
    """Area and power relative to PRBS5, proportional to flip-flop count."""
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise UnsupportedOrderError(f"cost model covers orders {MIN_ORDER}..{MAX_ORDER}, got {order}")
    scale = order / MIN_ORDER
    return CostEstimate(scale, scale)
