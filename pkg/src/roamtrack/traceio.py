"""Canonical visit-trace format and report serialization.

Trace lines are UTF-8::

    node,network,start_s,duration_s[,kind][,attractiveness]

``kind`` is ``visit`` (default, may be left empty) or ``rej``. Blank lines
and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from typing import IO, Iterable, List, Sequence, Tuple, Union

from .model import InvalidEventError, VisitEvent, VisitKind, validate_event

log = logging.getLogger(__name__)

_KINDS = {"": VisitKind.COMPLETED, "visit": VisitKind.COMPLETED, "rej": VisitKind.REJECTION}


class TraceParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


@dataclass(frozen=True)
class ParseIssue:
    lineno: int
    message: str


def _int_field(name: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"non-numeric {name} {text!r}") from None


def parse_line(line: str, lineno: int = 0) -> VisitEvent:
    fields = [f.strip() for f in line.split(",")]
    if len(fields) < 4 or len(fields) > 6:
        raise TraceParseError(lineno, f"expected 4-6 fields, got {len(fields)}")
    node, network, start_s, duration_s = fields[:4]
    rest = fields[4:]
    kind_text, attr_text = "", ""
    if len(rest) == 2:
        kind_text, attr_text = rest
    elif len(rest) == 1:
        # A lone trailing field is attractiveness when it parses as a number.
        try:
            float(rest[0])
            attr_text = rest[0]
        except ValueError:
            kind_text = rest[0]
    try:
        start = _int_field("start", start_s)
        duration = _int_field("duration", duration_s)
        if kind_text not in _KINDS:
            raise ValueError(f"unknown kind flag {kind_text!r}")
        attractiveness = None
        if attr_text:
            try:
                attractiveness = float(attr_text)
            except ValueError:
                raise ValueError(f"non-numeric attractiveness {attr_text!r}") from None
        e = VisitEvent(node=node, network=network, start=start, duration=duration,
                       kind=_KINDS[kind_text], attractiveness=attractiveness)
        validate_event(e)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, TraceParseError):
            raise
        raise TraceParseError(lineno, str(exc)) from None
    return e


def _iter_lines(source) -> Iterable[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        return source.splitlines()
    if isinstance(source, io.RawIOBase) or isinstance(source, io.BufferedIOBase):
        return io.TextIOWrapper(source, encoding="utf-8").read().splitlines()
    return (ln.decode("utf-8") if isinstance(ln, bytes) else ln for ln in source)


def read_trace(source, strict: bool = True) -> Tuple[List[VisitEvent], List[ParseIssue]]:
    """Parse a trace, returning events sorted by (start, network) and skipped lines.

    In strict mode the first malformed line raises :class:`TraceParseError`.
    """
    events: List[VisitEvent] = []
    issues: List[ParseIssue] = []
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            events.append(parse_line(line, lineno))
        except TraceParseError as exc:
            if strict:
                raise
            log.warning("skipping %s", exc)
            issues.append(ParseIssue(exc.lineno, exc.message))
    events.sort(key=lambda e: (e.start, e.network))
    return events, issues


def parse_trace(source, strict: bool = True) -> List[VisitEvent]:
    return read_trace(source, strict=strict)[0]


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def format_event(e: VisitEvent) -> str:
    parts = [e.node, e.network, str(int(e.start)), _num(e.duration)]
    if e.attractiveness is not None:
        parts += [e.kind.value, repr(float(e.attractiveness))]
    elif e.is_rejection:
        parts.append(e.kind.value)
    return ",".join(parts)


def format_trace(events: Iterable[VisitEvent]) -> str:
    return "".join(format_event(e) + "\n" for e in events)


def write_trace(events: Iterable[VisitEvent], out: IO[str]) -> None:
    out.write(format_trace(events))


def group_by_node(events: Sequence[VisitEvent]):
    """Split a sorted event list into {node: events}, preserving order."""
    nodes = {}
    for e in events:
        nodes.setdefault(e.node, []).append(e)
    return nodes


# -- reports -----------------------------------------------------------------

REPORT_HEADER = (
    "node",
    "num_networks",
    "num_waypoints",
    "path_features",
    "avg_visit_s",
    "total_duration_s",
    "error_margin_pct",
    "tth_mae_s_supplementary",
)


def fmt_pct(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return s or "0"


def _report_row(r) -> List[str]:
    tth = "" if r.tth_mae_s is None else str(int(round(r.tth_mae_s)))
    return [
        r.node,
        str(r.num_networks),
        str(r.num_waypoints),
        r.path_features,
        str(int(round(r.avg_visit_s))),
        str(int(round(r.total_duration_s))),
        fmt_pct(r.error_margin_pct),
        tth,
    ]


def write_report(reports, fmt: str = "delimited") -> str:
    """Serialize evaluation reports, one row per node sorted by node id.

    ``delimited`` is CSV with :data:`REPORT_HEADER`. ``table`` is an aligned
    text table with the average visit also in minutes and the total
    duration also in days.
    """
    if hasattr(reports, "node"):
        reports = [reports]
    reports = sorted(reports, key=lambda r: r.node)
    if fmt == "delimited":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_HEADER)
        for r in reports:
            w.writerow(_report_row(r))
        return buf.getvalue()
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")

    header = ["MN", "APs", "Waypoints", "Roaming path main features",
              "Avg visit (s/min)", "Total (s/days)", "Error (%)", "TTH MAE s*"]
    rows = []
    for r in reports:
        row = _report_row(r)
        rows.append([
            row[0], row[1], row[2], row[3],
            f"{row[4]} / {int(round(r.avg_visit_s / 60.0))}",
            f"{row[5]} / {int(round(r.total_duration_s / 86400.0))}",
            row[6], row[7] or "-",
        ])
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    lines = ["# error_margin_pct = 100 * mispredicted handovers / scored handovers",
             "# * TTH mean absolute error is supplementary; not part of target accuracy"]
    for row in [header] + rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def write_series(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt_cell(x) for x in row])
    return buf.getvalue()


def _fmt_cell(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def read_column_trace(
    lines: Iterable[str],
    node: str,
    network_col: int,
    start_col: int,
    duration_col: int,
    delimiter: Union[str, None] = None,
    skip_header: bool = False,
) -> List[VisitEvent]:
    """Convert a columnar visit log (e.g. an exported association trace)
    into events for ``node``. Columns are zero-based; ``delimiter=None``
    splits on whitespace. Start and duration may be fractional seconds and
    are rounded to whole seconds."""
    events = []
    for lineno, raw in enumerate(lines, start=1):
        if skip_header and lineno == 1:
            continue
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split(delimiter)
        try:
            e = VisitEvent(
                node=node,
                network=cols[network_col].strip(),
                start=int(round(float(cols[start_col]))),
                duration=int(round(float(cols[duration_col]))),
            )
            validate_event(e)
        except (IndexError, ValueError, InvalidEventError) as exc:
            raise TraceParseError(lineno, str(exc)) from None
        events.append(e)
    events.sort(key=lambda e: (e.start, e.network))
    return events
