"""Command-line front end: ``pufslot <subcommand> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import io as pio
from .collision import collision_probability_exact, monte_carlo_collision, nodes_supported
from .config import config_keys, dump_config, load_config
from .dispersion import (
    DEFAULT_WINDOW,
    PRBS9_REFERENCE_STD,
    compare_orders,
    sweep_outputs,
    windowed_std,
)
from .hardware import RO1_NOMINAL_HZ, RoPufConfig, RoSpec, estimate_cost, sample_ro_bank, traditional_ropuf_response
from .prbs import MAX_ORDER, MIN_ORDER, registry_polynomial
from .sim import ConfigError, Simulation, node_query_time, node_start_time

log = logging.getLogger("pufslot")

_ALIASES = {"num_nodes": ["--nodes"], "prbs_order": ["--order"]}


class UsageError(Exception):
    pass


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _table(args, header, rows, comments=(), meta=None):
    if args.format == "json":
        return pio.table_to_json(header, rows, meta)
    return pio.table_to_csv(header, rows, comments)


def cmd_collision(args):
    if args.order < 1 or args.nodes < 1:
        raise UsageError("--order and --nodes must be >= 1")
    header = ["n", "probability"]
    rows = []
    for n in range(1, args.nodes + 1):
        row = [n, collision_probability_exact(args.order, n).probability]
        if args.trials:
            est = monte_carlo_collision(args.order, n, args.trials, args.rng_seed)
            row += [est.probability, est.std_error]
        rows.append(row)
    if args.trials:
        header += ["mc_probability", "mc_std_error"]
    meta = {"order": args.order, "trials": args.trials, "rng_seed": args.rng_seed}
    _emit(_table(args, header, rows, meta=meta), args.out)


def cmd_nodes_supported(args):
    lo, hi = args.order_min, args.order_max
    if not MIN_ORDER <= lo <= hi <= MAX_ORDER:
        raise UsageError(f"need {MIN_ORDER} <= --order-min <= --order-max <= {MAX_ORDER}, got {lo}, {hi}")
    rows = []
    for order in range(lo, hi + 1):
        cost = estimate_cost(order)
        rows.append([order, nodes_supported(order), cost.area_scale, cost.power_scale])
    _emit(_table(args, ["order", "nodes", "area_scale", "power_scale"], rows), args.out)


def cmd_seed_sweep(args):
    poly = registry_polynomial(args.order)
    sweep = sweep_outputs(poly)
    stats = windowed_std(sweep, args.window)
    rows = [[s, int(v)] for s, v in enumerate(sweep.outputs)]
    meta = {"order": args.order, "window": args.window, "min_std": stats.min_std, "polynomial": str(poly)}
    comments = [f"order={args.order} window={args.window} min_std={stats.min_std!r}"]
    if args.order == 9:
        meta["reference_std"] = PRBS9_REFERENCE_STD
        comments.append(f"reference_std={PRBS9_REFERENCE_STD!r} (published PRBS9 figure, not asserted)")
    _emit(_table(args, ["seed", "output"], rows, comments, meta), args.out)
    log.info("PRBS%d min_std over window %d: %.4f", args.order, args.window, stats.min_std)


def cmd_compare_orders(args):
    orders = args.orders or list(range(MIN_ORDER, MAX_ORDER + 1))
    bad = [o for o in orders if not MIN_ORDER <= o <= MAX_ORDER]
    if bad:
        raise UsageError(f"orders {bad} outside {MIN_ORDER}..{MAX_ORDER}")
    rows = [[r.order, r.window, r.min_std, r.area_scale, r.power_scale] for r in compare_orders(orders, args.window)]
    _emit(_table(args, ["order", "window", "min_std", "area_scale", "power_scale"], rows), args.out)


def cmd_ropuf_baseline(args):
    cfg = RoPufConfig(args.ros, args.count_window)
    freqs = sample_ro_bank(cfg.num_ros, RoSpec(RO1_NOMINAL_HZ, args.sigma), args.rng_seed)
    challenges = cfg.all_challenges()
    bits = traditional_ropuf_response(freqs, challenges, cfg.count_window)
    rows = [[i, j, freqs[i], freqs[j], b] for (i, j), b in zip(challenges, bits)]
    response = "".join(map(str, bits))
    meta = {
        "num_ros": cfg.num_ros,
        "challenge_bits": cfg.challenge_bits,
        "response_bits": len(bits),
        "response": response,
        "parallel_counters": 2 * len(challenges),
    }
    comments = [f"{k}={v}" for k, v in meta.items()]
    _emit(_table(args, ["i", "j", "f_i", "f_j", "bit"], rows, comments, meta), args.out)


def cmd_simulate(args):
    overrides = {k: getattr(args, k) for k in config_keys()}
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as e:
        raise UsageError(f"invalid config: {e}") from None
    sim = Simulation(cfg)
    sim.sync(0.0)
    timeline, report = sim.run()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        (out / "timeline.csv").write_text(pio.timeline_to_csv(timeline))
    else:
        (out / "timeline.jsonl").write_text(pio.timeline_to_jsonl(timeline))
    nodes = [
        {
            "id": n.id,
            "f1": n.die.f1,
            "f2": n.die.f2,
            "seed": n.seed,
            "signature": n.signature,
            "cs_value": n.cs_value,
            "query_time": node_query_time(n),
            "start_time": node_start_time(n),
        }
        for n in sim.network
    ]
    (out / "report.json").write_text(pio.report_to_json(report, {"nodes": nodes}))
    (out / "config.txt").write_text(dump_config(cfg))

    for n in nodes:
        print(f"node {n['id']}: seed={n['seed']} signature={n['signature']} start={n['start_time']:.4f} s")
    print(f"signature collisions: {report.signature_collisions or 'none'}")
    print(f"window overlaps: {len(report.window_overlaps)}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pufslot", description=__doc__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="csv"):
        sp.add_argument("--format", choices=("csv", "json"), default=fmt)
        sp.add_argument("--out", metavar="PATH")

    sp = sub.add_parser("collision", help="collision probability vs node count")
    sp.add_argument("--order", type=int, default=9)
    sp.add_argument("--nodes", type=int, default=30, help="largest node count")
    sp.add_argument("--trials", type=int, default=0, help="add a Monte Carlo column")
    sp.add_argument("--rng-seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_collision)

    sp = sub.add_parser("nodes-supported", help="max nodes with collision probability < 0.5")
    sp.add_argument("--order-min", type=int, default=MIN_ORDER)
    sp.add_argument("--order-max", type=int, default=MAX_ORDER)
    common(sp)
    sp.set_defaults(func=cmd_nodes_supported)

    sp = sub.add_parser("seed-sweep", help="signature for every seed plus windowed spread")
    sp.add_argument("--order", type=int, default=9)
    sp.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    common(sp)
    sp.set_defaults(func=cmd_seed_sweep)

    sp = sub.add_parser("compare-orders", help="min windowed std and cost per PRBS order")
    sp.add_argument("--orders", type=int, nargs="+")
    sp.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    common(sp)
    sp.set_defaults(func=cmd_compare_orders)

    sp = sub.add_parser("ropuf-baseline", help="traditional M-oscillator PUF response")
    sp.add_argument("--ros", type=int, default=8)
    sp.add_argument("--count-window", type=float, default=1.0)
    sp.add_argument("--sigma", type=float, default=0.02)
    sp.add_argument("--rng-seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_ropuf_baseline)

    sp = sub.add_parser("simulate", help="event-driven network simulation")
    sp.add_argument("--config", metavar="PATH")
    sp.add_argument("--format", choices=("csv", "json"), default="json")
    sp.add_argument("--out", metavar="DIR", default="simulate-out")
    for key in config_keys():
        flags = ["--" + key.replace("_", "-")] + _ALIASES.get(key, [])
        sp.add_argument(*flags, dest=key, metavar="VALUE", default=None)
    sp.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except (UsageError, ValueError) as e:
        print(f"pufslot {args.command}: error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
