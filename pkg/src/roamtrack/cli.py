"""roamtrack command line: rank, predict, evaluate, synth, convert.

Exit codes: 0 ok, 1 trace/parse error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import __version__, synth
from .engine import Replayer
from .evaluator import (CategoryThresholds, InsufficientTraceError,
                        categorize, error_distribution, replay)
from .model import AttractivenessMode, InvalidEventError, Params
from .traceio import (TraceParseError, format_trace, group_by_node, read_column_trace,
                      read_trace, write_report, write_series)

EXIT_OK, EXIT_PARSE, EXIT_IO = 0, 1, 2

log = logging.getLogger("roamtrack")


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _params(args) -> Params:
    try:
        return Params(alpha=args.alpha, gamma=args.gamma, notify_window=args.window,
                      attractiveness_mode=AttractivenessMode(args.attractiveness_mode),
                      warmup=args.warmup)
    except ValueError as exc:
        raise CliError(f"bad parameter: {exc}", EXIT_PARSE) from None


def _load(path: str, lenient: bool):
    try:
        if path == "-":
            text = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_IO) from None
    try:
        events, issues = read_trace(text, strict=not lenient)
    except (TraceParseError, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    if issues:
        print(f"{path}: skipped {len(issues)} malformed line(s)", file=sys.stderr)
    if not events:
        raise CliError(f"{path}: empty trace", EXIT_PARSE)
    return events


def _nodes(events, only=None):
    nodes = group_by_node(events)
    if only is not None:
        if only not in nodes:
            raise CliError(f"node {only!r} not in trace", EXIT_PARSE)
        return {only: nodes[only]}
    return nodes


def cmd_rank(args) -> int:
    p = _params(args)
    lines = []
    for node, events in sorted(_nodes(_load(args.trace, args.lenient), args.node).items()):
        rp = Replayer(node, p)
        for e in events:
            rp.feed(e)
        if rp.table is None:
            continue
        if args.at is not None:
            table = rp.peek_table(args.at)
        else:
            table = rp.table
        for pos, (net, st) in enumerate(table.ordered(), start=1):
            s = rp.ledger.per_network[net]
            lines.append(f"{node},{pos},{net},{st.log_r_smoothed!r},{st.r_smoothed!r},"
                         f"{s.visits},{s.rej},{s.d_avg!r}")
    sys.stdout.write("node,position,network,log_rank,rank,visits,rejections,d_avg_s\n" + "".join(
        ln + "\n" for ln in lines))
    return EXIT_OK


def cmd_predict(args) -> int:
    p = _params(args)
    out = []
    for node, events in sorted(_nodes(_load(args.trace, args.lenient), args.node).items()):
        rp = Replayer(node, p)
        for e in events:
            res = rp.feed(e, notify=True)
            if res is None:
                continue
            for n in res.notifications:
                out.append(n.to_line())
            tth = "none" if res.tth_predicted is None else str(int(round(res.tth_predicted)))
            out.append(f"predict node={node} at={int(e.end)} current={e.network} "
                       f"target={res.predicted or 'none'} tth_s={tth}")
    sys.stdout.write("".join(ln + "\n" for ln in out))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    p = _params(args)
    events = []
    for path in args.traces:
        events.extend(_load(path, args.lenient))
    events.sort(key=lambda e: (e.start, e.network))
    reports = []
    for node, evs in sorted(_nodes(events, args.node).items()):
        try:
            reports.append(replay(evs, p))
        except InsufficientTraceError as exc:
            print(f"node {node}: {exc}", file=sys.stderr)
    if not reports:
        raise CliError("no node had enough visits to evaluate", EXIT_PARSE)
    text = write_report(reports, args.format)
    if args.format == "table":
        th = CategoryThresholds(args.long_days, args.large_aps, args.high_waypoints)
        cats = [f"# category {r.node}: " + " ".join(categorize(r, th)) for r in reports]
        text += "".join(c + "\n" for c in cats)
    sys.stdout.write(text)
    if args.out_dir:
        dist = error_distribution(reports, bins=args.bins)
        try:
            os.makedirs(args.out_dir, exist_ok=True)
            with open(os.path.join(args.out_dir, "error_density.csv"), "w") as fh:
                fh.write(write_series(("bin_lo", "bin_hi", "density", "cumulative"),
                                      dist.histogram_rows()))
            with open(os.path.join(args.out_dir, "error_ecdf.csv"), "w") as fh:
                fh.write(write_series(("error_margin_pct", "cdf"), dist.ecdf_rows()))
        except OSError as exc:
            raise CliError(f"{args.out_dir}: {exc.strerror or exc}", EXIT_IO) from None
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.archetype:
        profile = synth.ARCHETYPES[args.archetype](seed=args.seed)
    else:
        profile = synth.Profile(
            num_networks=args.networks, num_waypoints=args.waypoints,
            total_duration_s=args.duration, node=args.node_name, layout=args.layout,
            dominant=args.dominant, dominant_fraction=args.dominant_fraction,
            dominant_duration_factor=args.dominant_duration_factor,
            singletons=args.singletons, block_width=args.block_width, seed=args.seed)
    try:
        text = format_trace(synth.generate(profile))
    except synth.InfeasibleProfileError as exc:
        raise CliError(f"infeasible profile: {exc}", EXIT_PARSE) from None
    _write_text(args.output, text)
    return EXIT_OK


def cmd_convert(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CliError(f"{args.input}: {exc.strerror or exc}", EXIT_IO) from None
    node = args.node_name or os.path.splitext(os.path.basename(args.input))[0]
    try:
        events = read_column_trace(lines, node, args.network_col, args.start_col,
                                   args.duration_col, args.delimiter, args.skip_header)
    except TraceParseError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_PARSE) from None
    _write_text(args.output, format_trace(events))
    return EXIT_OK


def _write_text(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_IO) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roamtrack",
        description="Rank visited wireless networks, predict handover targets and "
                    "time-to-handover, and score predictions on visit traces.")
    parser.add_argument("--version", action="version", version=f"roamtrack {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    tuning = argparse.ArgumentParser(add_help=False)
    tuning.add_argument("--no-banner", action="store_true", help="omit the version banner line")
    tuning.add_argument("--alpha", type=float, default=0.5,
                        help="rank EMA weight of history (default: %(default)s)")
    tuning.add_argument("--gamma", type=float, default=0.5,
                        help="visit-duration EMA weight of history (default: %(default)s)")
    tuning.add_argument("--window", type=float, default=60.0,
                        help="periodic check interval in seconds (default: %(default)s)")
    tuning.add_argument("--warmup", type=int, default=1,
                        help="leading visits excluded from scoring (default: %(default)s)")
    tuning.add_argument("--attractiveness-mode", default="visit-derived",
                        choices=[m.value for m in AttractivenessMode])
    tuning.add_argument("--lenient", action="store_true",
                        help="skip malformed trace lines instead of failing")
    tuning.add_argument("--node", default=None, help="only process this node")

    p = sub.add_parser("rank", parents=[tuning], help="print the final rank table per node")
    p.add_argument("trace", help="trace file, or - for stdin")
    p.add_argument("--at", type=float, default=None,
                   help="rank at this time instead of the last visit end (EMA not advanced)")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("predict", parents=[tuning],
                       help="replay a trace, logging predictions and notifications")
    p.add_argument("trace")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", parents=[tuning], help="score target selection per node")
    p.add_argument("traces", nargs="+")
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--format", choices=("table", "delimited"), default="table")
    p.add_argument("--out-dir", default=None, help="write error density/ECDF CSVs here")
    p.add_argument("--long-days", type=float, default=10.0)
    p.add_argument("--large-aps", type=int, default=6)
    p.add_argument("--high-waypoints", type=int, default=20)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a seeded synthetic trace")
    p.add_argument("--archetype", choices=sorted(synth.ARCHETYPES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--networks", type=int, default=7)
    p.add_argument("--waypoints", type=int, default=55)
    p.add_argument("--duration", type=int, default=621978, help="total roaming span, seconds")
    p.add_argument("--node-name", default="mn")
    p.add_argument("--layout", choices=synth.LAYOUTS, default="random")
    p.add_argument("--dominant", default=None)
    p.add_argument("--dominant-fraction", type=float, default=0.0)
    p.add_argument("--dominant-duration-factor", type=float, default=1.0)
    p.add_argument("--singletons", type=int, default=0)
    p.add_argument("--block-width", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("convert", help="turn a columnar visit log into a canonical trace")
    p.add_argument("input")
    p.add_argument("--node-name", default=None, help="node label (default: file stem)")
    p.add_argument("--network-col", type=int, default=0)
    p.add_argument("--start-col", type=int, default=1)
    p.add_argument("--duration-col", type=int, default=2)
    p.add_argument("--delimiter", default=None, help="column separator (default: whitespace)")
    p.add_argument("--skip-header", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    if args.command in ("rank", "predict", "evaluate") and not args.no_banner:
        sys.stdout.write(f"# roamtrack {__version__}\n")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"roamtrack: {exc}", file=sys.stderr)
        return exc.code
    except (InvalidEventError, ValueError) as exc:
        print(f"roamtrack: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
