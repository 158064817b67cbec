"""Discrete-event model of the implant timer/randomizer across a network of dies.

After a sync each node's RO1-clocked timer counts from zero. At half range
the RO2 counter is sampled as the PRBS seed; the resulting signature is
padded into a communication-slot (CS) word and the node starts its
comm -> idle -> stim duty cycle when the timer reaches CS. The cycle then
repeats every ``cycle_period`` seconds, anchored on that node's CommStart.

Event times are computed in closed form from tick counts. With
``tick_accurate`` the tick counts themselves come from stepping the counters
edge by edge (slow, for validating small configurations).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .hardware import DieSample, RoSpec, extract_seed, sample_die
from .prbs import UnsupportedOrderError, registry_polynomial, signature_table


class ConfigError(ValueError):
    """A SimConfig invariant does not hold."""


@dataclass
class SimConfig:
    num_nodes: int = 3
    ro1_nominal: float = 10_000.0
    ro1_sigma: float = 0.02
    ro2_nominal: float = 20_000.0
    ro2_sigma: float = 0.02
    prbs_order: int = 9
    timer_bits: int = 22
    seed_bits: int = 9
    pad_zero_bits: int = 12
    comm_duration: float = 0.1
    idle_duration: float = 0.1
    stim_duration: float = 0.1
    cycle_period: float = 100.0
    sim_duration: float = 600.0
    rng_seed: int = 0
    tick_accurate: bool = False

    @property
    def ro1_spec(self) -> RoSpec:
        return RoSpec(self.ro1_nominal, self.ro1_sigma)

    @property
    def ro2_spec(self) -> RoSpec:
        return RoSpec(self.ro2_nominal, self.ro2_sigma)

    @property
    def query_count(self) -> int:
        return 1 << (self.timer_bits - 1)

    def validate(self) -> "SimConfig":
        if 1 + self.seed_bits + self.pad_zero_bits != self.timer_bits:
            raise ConfigError(
                "invariant 1 + seed_bits + pad_zero_bits = timer_bits violated: "
                f"1 + {self.seed_bits} + {self.pad_zero_bits} != {self.timer_bits}"
            )
        if self.prbs_order != self.seed_bits:
            raise ConfigError(
                f"invariant prbs_order = seed_bits violated: {self.prbs_order} != {self.seed_bits}"
            )
        try:
            registry_polynomial(self.prbs_order)
        except UnsupportedOrderError as e:
            raise ConfigError(str(e)) from None
        if self.num_nodes < 1:
            raise ConfigError(f"num_nodes must be >= 1, got {self.num_nodes}")
        for name in ("comm_duration", "idle_duration", "stim_duration", "cycle_period", "sim_duration"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.comm_duration + self.idle_duration + self.stim_duration > self.cycle_period:
            raise ConfigError("comm_duration + idle_duration + stim_duration must not exceed cycle_period")
        try:
            self.ro1_spec, self.ro2_spec
        except ValueError as e:
            raise ConfigError(str(e)) from None
        return self


class FsmState(str, Enum):
    AWAIT_SYNC = "AwaitSync"
    COUNTING = "Counting"
    QUERIED = "Queried"
    COMMUNICATING = "Communicating"
    IDLE = "Idle"
    STIMULATING = "Stimulating"
    CYCLE_WAIT = "CycleWait"


class EventKind(str, Enum):
    SYNC = "Sync"
    QUERY = "Query"
    COMM_START = "CommStart"
    COMM_END = "CommEnd"
    STIM_START = "StimStart"
    STIM_END = "StimEnd"
    CYCLE_RESTART = "CycleRestart"


@dataclass
class ImplantNode:
    id: int
    die: DieSample
    seed: int
    signature: int
    cs_value: int
    query_ticks: int
    start_ticks: int
    fsm_state: FsmState = FsmState.AWAIT_SYNC
    sync_time: float | None = None
    epoch: int = 0


@dataclass(frozen=True)
class TimelineEvent:
    node_id: int
    kind: EventKind
    time: float


@dataclass
class CollisionReport:
    signature_collisions: list[list[int]] = field(default_factory=list)
    window_overlaps: list[tuple[int, int, float, float]] = field(default_factory=list)

    @property
    def any_collision(self) -> bool:
        return bool(self.signature_collisions or self.window_overlaps)

    def to_dict(self) -> dict:
        return {
            "any_collision": self.any_collision,
            "signature_collisions": [list(g) for g in self.signature_collisions],
            "window_overlaps": [list(o) for o in self.window_overlaps],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CollisionReport":
        return cls(
            [list(g) for g in d["signature_collisions"]],
            [tuple(o) for o in d["window_overlaps"]],
        )


def communication_slot(signature: int, cfg: SimConfig) -> int:
    """Leading one, the signature, then ``pad_zero_bits`` zeros."""
    if not 0 <= signature < (1 << cfg.seed_bits):
        raise ValueError(f"signature {signature} does not fit in {cfg.seed_bits} bits")
    return (1 << (cfg.timer_bits - 1)) + (signature << cfg.pad_zero_bits)


def node_start_time(node: ImplantNode) -> float:
    """Time of the node's first CommStart; relative to t=0 if it never saw a sync."""
    t0 = node.sync_time or 0.0
    return t0 + node.start_ticks / node.die.f1


def node_query_time(node: ImplantNode) -> float:
    t0 = node.sync_time or 0.0
    return t0 + node.query_ticks / node.die.f1


def make_node(node_id: int, die: DieSample, cfg: SimConfig) -> ImplantNode:
    poly = registry_polynomial(cfg.prbs_order)
    if cfg.tick_accurate:
        query_ticks = int(_kernels.tick_until(cfg.query_count, cfg.timer_bits))
        seed = int(_kernels.tick_count(die.f1, die.f2, query_ticks, cfg.seed_bits))
    else:
        query_ticks = cfg.query_count
        seed = extract_seed(die, query_ticks, cfg.seed_bits)
    signature = int(signature_table(poly)[seed])
    cs = communication_slot(signature, cfg)
    if cfg.tick_accurate:
        start_ticks = int(_kernels.tick_until(cs, cfg.timer_bits))
    else:
        start_ticks = cs
    return ImplantNode(node_id, die, seed, signature, cs, query_ticks, start_ticks)


def build_network(cfg: SimConfig) -> list[ImplantNode]:
    """Sample ``num_nodes`` dies from one stream seeded by ``cfg.rng_seed``."""
    cfg.validate()
    rng = np.random.default_rng(cfg.rng_seed)
    spec1, spec2 = cfg.ro1_spec, cfg.ro2_spec
    return [make_node(i, sample_die(spec1, spec2, rng), cfg) for i in range(cfg.num_nodes)]


def broadcast_sync(network: list[ImplantNode], time: float) -> list[ImplantNode]:
    """Reset every node's timer and FSM. Pending events of older epochs are void."""
    for node in network:
        node.fsm_state = FsmState.COUNTING
        node.sync_time = float(time)
        node.epoch += 1
    return network


def signature_collisions(network: list[ImplantNode]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for node in network:
        groups.setdefault(node.cs_value, []).append(node.id)
    return sorted(ids for ids in groups.values() if len(ids) > 1)


def find_overlaps(windows: list[tuple[int, float, float]]) -> list[tuple[int, int, float, float]]:
    """Pairwise overlaps of half-open comm windows ``(node_id, start, end)``."""
    ws = sorted(windows, key=lambda w: (w[1], w[0]))
    out = []
    for i, (a, sa, ea) in enumerate(ws):
        for b, sb, eb in ws[i + 1:]:
            if sb >= ea:
                break
            if a == b:
                continue
            lo, hi = max(sa, sb), min(ea, eb)
            if hi > lo:
                out.append((min(a, b), max(a, b), lo, hi))
    out.sort()
    return out


class Simulation:
    """Event-driven run over a network. Call ``sync`` then ``run``."""

    def __init__(self, cfg: SimConfig, network: list[ImplantNode] | None = None):
        self.cfg = cfg.validate()
        self.network = network if network is not None else build_network(cfg)
        self.nodes = {n.id: n for n in self.network}
        self.now = 0.0
        self.timeline: list[TimelineEvent] = []
        self.windows: list[tuple[int, float, float]] = []
        self._queue: list = []
        self._seq = itertools.count()
        self._open: dict[int, float] = {}  # node id -> CommStart of the open window
        self._anchor: dict[int, float] = {}

    def _schedule(self, time: float, node: ImplantNode, kind: EventKind):
        heapq.heappush(self._queue, (time, node.id, next(self._seq), kind, node.epoch))

    def _emit(self, node: ImplantNode, kind: EventKind, time: float):
        self.timeline.append(TimelineEvent(node.id, kind, time))

    def _close_window(self, node_id: int, time: float):
        start = self._open.pop(node_id, None)
        if start is not None and time > start:
            self.windows.append((node_id, start, time))

    def sync(self, time: float):
        """Process everything strictly before ``time``, then broadcast a sync."""
        self._advance(time, inclusive=False)
        self.now = time
        for node in self.network:
            # an interrupted communication ends at the sync instant
            self._close_window(node.id, time)
        broadcast_sync(self.network, time)
        for node in self.network:
            self._emit(node, EventKind.SYNC, time)
            self._schedule(node_query_time(node), node, EventKind.QUERY)

    def run(self, until: float | None = None) -> tuple[list[TimelineEvent], CollisionReport]:
        until = self.cfg.sim_duration if until is None else until
        self._advance(until, inclusive=True)
        self.now = until
        for node_id in sorted(self._open):
            start = self._open[node_id]
            if until > start:
                self.windows.append((node_id, start, until))
        self._open.clear()
        report = CollisionReport(signature_collisions(self.network), find_overlaps(self.windows))
        return self.timeline, report

    def _advance(self, until: float, inclusive: bool):
        q = self._queue
        while q and (q[0][0] <= until if inclusive else q[0][0] < until):
            time, node_id, _, kind, epoch = heapq.heappop(q)
            node = self.nodes[node_id]
            if epoch != node.epoch:
                continue
            self.now = time
            self._handle(node, kind, time)

    def _handle(self, node: ImplantNode, kind: EventKind, t: float):
        cfg = self.cfg
        self._emit(node, kind, t)
        if kind is EventKind.QUERY:
            node.fsm_state = FsmState.QUERIED
            self._schedule(node_start_time(node), node, EventKind.COMM_START)
        elif kind is EventKind.COMM_START:
            node.fsm_state = FsmState.COMMUNICATING
            self._anchor[node.id] = t
            self._open[node.id] = t
            self._schedule(t + cfg.comm_duration, node, EventKind.COMM_END)
        elif kind is EventKind.COMM_END:
            node.fsm_state = FsmState.IDLE
            self._close_window(node.id, t)
            self._schedule(t + cfg.idle_duration, node, EventKind.STIM_START)
        elif kind is EventKind.STIM_START:
            node.fsm_state = FsmState.STIMULATING
            self._schedule(t + cfg.stim_duration, node, EventKind.STIM_END)
        elif kind is EventKind.STIM_END:
            node.fsm_state = FsmState.CYCLE_WAIT
            self._schedule(self._anchor[node.id] + cfg.cycle_period, node, EventKind.CYCLE_RESTART)
        elif kind is EventKind.CYCLE_RESTART:
            self._schedule(t, node, EventKind.COMM_START)


def run_simulation(cfg: SimConfig) -> tuple[list[TimelineEvent], CollisionReport]:
    sim = Simulation(cfg)
    sim.sync(0.0)
    return sim.run()
