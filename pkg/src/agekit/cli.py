"""Command-line front end.

Subcommands: smooth, fit, simulate, rejuvenate, report. Every command is
deterministic given its flags (simulation randomness is seeded). Exit
codes are a stable contract: 0 success, 2 input or parse error, 3 domain
or invariant error. Diagnostics go to stderr; outputs are written
atomically.
"""

import argparse
import importlib.resources
import os
import sys

import numpy as np

from .errors import DomainError, ParseError
from .fitting import fit, write_fit_reports
from .model import eval_model
from .normalize import to_aging_curve
from .simulator import (
    NO_POLICY,
    RejuvenationPolicy,
    SimConfig,
    aging_degree,
    apply_policy_experiment,
    load_sim_config,
    load_trace,
    parse_workload,
    run,
    validate_workload,
    write_trace,
)
from .smoothing import SmoothingConfig, lowess
from .svg import Panel, Series, render_chart
from .timeseries import (
    MetricSeries,
    Orientation,
    load_series,
    rescale_time,
    save_series,
    write_text_atomic,
)

L2_WORKLOAD = "600,0,100,20,1000,0"


def default_config():
    """The simulator configuration shipped with the package."""
    path = importlib.resources.files("agekit").joinpath("data/defaults.cfg")
    return load_sim_config(str(path))


def _resolve_config(args):
    if args.config is None:
        return default_config()
    return load_sim_config(args.config)


def _series_name(path):
    return os.path.splitext(os.path.basename(path))[0]


def cmd_smooth(args):
    series = load_series(args.input, _series_name(args.input), Orientation.HIGHER_IS_WORSE)
    config = SmoothingConfig(fraction=args.fraction, robust_iterations=args.iterations)
    save_series(lowess(series, config), args.output)
    return 0


def _fit_one(path, orientation, time_scale):
    series = load_series(path, _series_name(path), orientation)
    series = rescale_time(series, time_scale)
    curve = to_aging_curve(series)
    report = fit(curve)
    if not report.converged:
        print(
            f"warning: {series.name}: fit did not converge (converged=false)",
            file=sys.stderr,
        )
    return series.name, curve, report


def _fit_chart(curve, report):
    predicted = eval_model(report.model, curve.t)
    residual = curve.y - predicted
    return render_chart(
        [
            Panel(
                "aging degree and fitted model",
                "time [h]",
                "aging degree",
                [
                    Series("observed", curve.t, curve.y),
                    Series("fitted", curve.t, predicted, dashed=True),
                ],
            ),
            Panel(
                "residual (observed - fitted)",
                "time [h]",
                "residual",
                [Series("residual", curve.t, residual)],
            ),
        ]
    )


def cmd_fit(args):
    orientation = Orientation(args.orientation)
    if args.svg is not None and len(args.inputs) != 1:
        raise ParseError("--svg requires exactly one input file")
    results = [_fit_one(path, orientation, args.time_scale) for path in args.inputs]
    write_fit_reports(args.output, [(name, report) for name, _, report in results])
    if args.svg is not None:
        _, curve, report = results[0]
        write_text_atomic(args.svg, _fit_chart(curve, report))
    return 0


def _build_policy(parser, args):
    if args.policy == "probabilistic":
        if args.policy_p is None:
            parser.error("--policy probabilistic requires --policy-p")
        return RejuvenationPolicy.probabilistic(args.policy_p, args.trigger)
    if args.policy_p is not None:
        parser.error("--policy-p is only valid with --policy probabilistic")
    if args.policy == "memreap":
        return RejuvenationPolicy.mem_reap_enlarge(args.refcount, args.trigger)
    if args.refcount is not None:
        parser.error("--refcount is only valid with --policy memreap")
    if args.policy == "none":
        return NO_POLICY
    if args.policy == "cache-hit":
        return RejuvenationPolicy.cache_hit(args.trigger)
    return RejuvenationPolicy.disk_block_reset(args.trigger)


def _trace_chart(states, cfg, marker=None):
    ticks = np.array([s.tick for s in states], dtype=float)

    def col(attr):
        return np.array([getattr(s, attr) for s in states])

    label = "rejuvenation" if marker is not None else ""
    return render_chart(
        [
            Panel(
                "bandwidth per client",
                "tick",
                "kbyte",
                [Series("bandwidth", ticks, col("bandwidth_kbyte"))],
                vline=marker,
                vline_label=label,
            ),
            Panel(
                "memory",
                "tick",
                "MB",
                [
                    Series("working set", ticks, col("working_set_mb")),
                    Series("cache", ticks, col("cache_mb")),
                    Series("stale blocks", ticks, col("sfr_mb"), dashed=True),
                ],
                vline=marker,
            ),
            Panel(
                "disk queue",
                "tick",
                "length",
                [Series("queue", ticks, col("disk_queue_len"))],
                vline=marker,
            ),
        ]
    )


def _run_simulation(parser, args, rejuvenation_tick=None):
    cfg = _resolve_config(args)
    load = parse_workload(args.workload)
    validate_workload(load, cfg)
    policy = _build_policy(parser, args)
    if rejuvenation_tick is None:
        states = run(cfg, load, policy, ticks=args.ticks, seed=args.seed)
    else:
        if rejuvenation_tick >= args.ticks:
            raise DomainError(
                f"rejuvenation tick {rejuvenation_tick} must be below --ticks {args.ticks}"
            )
        before, after = apply_policy_experiment(
            cfg, load, policy, args.ticks, rejuvenation_tick, seed=args.seed
        )
        states = list(before) + list(after)
    write_trace(args.output, states)
    if args.svg is not None:
        write_text_atomic(args.svg, _trace_chart(states, cfg, marker=rejuvenation_tick))
    return 0


def cmd_simulate(parser, args):
    return _run_simulation(parser, args)


def cmd_rejuvenate(parser, args):
    return _run_simulation(parser, args, rejuvenation_tick=args.rejuvenation_tick)


def cmd_report(args):
    cfg = _resolve_config(args)
    columns = load_trace(args.input)
    series = MetricSeries(
        name=_series_name(args.input),
        unit="kbyte",
        orientation=Orientation.LOWER_IS_WORSE,
        t=columns["tick"] * cfg.tick_seconds / 3600.0,
        values=columns["bandwidth_kbyte"],
    )
    curve = to_aging_curve(series)
    report = fit(curve)
    if not report.converged:
        print(
            f"warning: {series.name}: fit did not converge (converged=false)",
            file=sys.stderr,
        )
    write_fit_reports(args.output, [(series.name, report)])
    if args.svg is not None:
        write_text_atomic(args.svg, _fit_chart(curve, report))
    return 0


def _add_simulation_flags(sub):
    sub.add_argument("--config", help="simulator config file (default: shipped defaults)")
    sub.add_argument(
        "--workload",
        default=L2_WORKLOAD,
        help="workload tuple 'clients,file_dist,file_object,file_max_object,"
        f"sleep_ms,file_difference' (default: {L2_WORKLOAD})",
    )
    sub.add_argument(
        "--policy",
        choices=("none", "cache-hit", "probabilistic", "block-reset", "memreap"),
        default="none",
        help="rejuvenation policy variant (default: none)",
    )
    sub.add_argument(
        "--policy-p",
        type=float,
        default=None,
        help="admission probability for --policy probabilistic",
    )
    sub.add_argument(
        "--refcount",
        type=int,
        default=None,
        help="enlarged refcount threshold for --policy memreap",
    )
    sub.add_argument(
        "--trigger",
        type=float,
        default=0.5,
        help="aging degree that activates the policy (default: 0.5)",
    )
    sub.add_argument("--ticks", type=int, default=4000, help="tick count (default: 4000)")
    sub.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    sub.add_argument("-o", "--output", required=True, help="trace CSV path")
    sub.add_argument("--svg", help="optional chart path (bandwidth/memory/queue)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="agekit",
        description="Aging-trend analysis: smooth, normalize, fit, simulate, report.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("smooth", help="lowess-smooth a t,value series")
    sub.add_argument("input", help="input CSV with header t,value")
    sub.add_argument("output", help="output CSV path")
    sub.add_argument(
        "--fraction", type=float, default=0.3, help="neighbor fraction (default: 0.3)"
    )
    sub.add_argument(
        "--iterations", type=int, default=0, help="robustness passes (default: 0)"
    )

    sub = commands.add_parser(
        "fit", help="smooth, normalize, and fit one or more metric series"
    )
    sub.add_argument("inputs", nargs="+", help="input CSVs with header t,value")
    sub.add_argument(
        "--orientation",
        required=True,
        choices=tuple(o.value for o in Orientation),
        help="whether larger values mean more aging",
    )
    sub.add_argument(
        "--time-scale",
        type=float,
        default=1.0 / 3600.0,
        help="multiplier applied to input times (default: 1/3600, seconds to hours)",
    )
    sub.add_argument("-o", "--output", required=True, help="report CSV path")
    sub.add_argument("--svg", help="optional chart path (single input only)")

    sub = commands.add_parser("simulate", help="run the feedback-loop simulator")
    _add_simulation_flags(sub)

    sub = commands.add_parser(
        "rejuvenate", help="simulate with a policy switched on mid-run"
    )
    _add_simulation_flags(sub)
    sub.add_argument(
        "--rejuvenation-tick",
        type=int,
        required=True,
        help="tick at which the policy becomes active",
    )

    sub = commands.add_parser(
        "report", help="fit the aging model to a simulator trace's bandwidth"
    )
    sub.add_argument("input", help="trace CSV produced by simulate/rejuvenate")
    sub.add_argument("--config", help="simulator config file (default: shipped defaults)")
    sub.add_argument("-o", "--output", required=True, help="report CSV path")
    sub.add_argument("--svg", help="optional chart path")

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "smooth":
            return cmd_smooth(args)
        if args.command == "fit":
            return cmd_fit(args)
        if args.command == "simulate":
            return cmd_simulate(parser, args)
        if args.command == "rejuvenate":
            return cmd_rejuvenate(parser, args)
        return cmd_report(args)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; normalize to int
        return int(exc.code or 0)
    except ParseError as exc:
        print(f"agekit: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"agekit: error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"agekit: error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())
