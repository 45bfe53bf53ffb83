"""Trace replay scoring, per-node summaries and error distributions."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .model import AttractivenessMode, NetworkId, Params, VisitEvent, validate_event

ERROR_DEFINITION = "100 * mispredicted handovers / scored handovers"


class InsufficientTraceError(ValueError):
    pass


@dataclass(frozen=True)
class PredictionRecord:
    """One scored handover.

    ``at`` is the end of the current visit, when the target is chosen.
    ``tth_predicted`` is the estimate the node held for the current visit
    (fixed when it started); ``tth_actual`` is that visit's real duration.
    """

    at: float
    current: NetworkId
    predicted: Optional[NetworkId]
    actual_next: NetworkId
    correct: bool
    tth_predicted: Optional[float]
    tth_actual: float


@dataclass
class EvaluationReport:
    node: str
    num_networks: int
    num_waypoints: int
    path_features: str
    avg_visit_s: float
    total_duration_s: float
    error_margin_pct: float
    records: List[PredictionRecord] = field(default_factory=list)
    tth_mae_s: Optional[float] = None

    @property
    def duration_days(self) -> float:
        return self.total_duration_s / 86400.0


def _encode(events: Sequence[VisitEvent]):
    names = sorted({e.network for e in events})
    index = {n: i for i, n in enumerate(names)}
    net = np.fromiter((index[e.network] for e in events), dtype=np.int32, count=len(events))
    start = np.fromiter((e.start for e in events), dtype=np.int64, count=len(events))
    dur = np.fromiter((e.duration for e in events), dtype=np.float64, count=len(events))
    rej = np.fromiter((e.is_rejection for e in events), dtype=np.uint8, count=len(events))
    attr = np.fromiter(
        (math.nan if e.attractiveness is None else e.attractiveness for e in events),
        dtype=np.float64, count=len(events),
    )
    return names, net, start, dur, rej, attr


def path_features(visits: Sequence[VisitEvent]) -> str:
    """Short free-text description of how visits spread over networks."""
    counts = Counter(e.network for e in visits)
    total = sum(counts.values())
    parts = []
    top_net, top = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    if len(counts) > 1 and top / total >= 0.4:
        parts.append(f"1 AP accounts for {round(100 * top / total)}% of visits")
    once = sum(1 for c in counts.values() if c == 1)
    if once == len(counts):
        parts.append("all APs visited once")
    elif once:
        parts.append(f"{once} AP{'s' if once > 1 else ''} visited once only")
    else:
        parts.append("all APs revisited")
    others = [c for n, c in counts.items() if n != top_net]
    if others:
        parts.append(f"remainder visited {sum(others) / len(others):.1f} times on average")
    return "; ".join(parts)


def replay(events: Sequence[VisitEvent], p: Params = Params(), backend: Optional[str] = None) -> EvaluationReport:
    """Replay one node's trace and score the target chosen before each handover.

    At the end of every completed visit the ranks are refreshed and the
    best network other than the current one is selected. A handover is a
    change of network between consecutive completed visits; the first
    ``p.warmup`` visits are not scored. Predictions never see events past
    the visit they are made in.
    """
    if not events:
        raise InsufficientTraceError("empty trace")
    nodes = {e.node for e in events}
    if len(nodes) != 1:
        raise ValueError(f"replay needs events of one node, got {sorted(nodes)}")
    for e in events:
        validate_event(e)
    for a, b in zip(events, events[1:]):
        if b.start < a.start:
            raise ValueError("events must be sorted by start time")

    visits = [e for e in events if not e.is_rejection]
    if len(visits) < p.warmup + 2:
        raise InsufficientTraceError(
            f"need at least {p.warmup + 2} visits, trace has {len(visits)}")

    names, net, start, dur, rej, attr = _encode(events)
    kernel = kernels.get_kernel(backend)
    pred, tth = kernel(
        names, net, start, dur, rej, attr, p.alpha, p.gamma,
        p.attractiveness_mode is AttractivenessMode.EXPLICIT, p.default_attractiveness,
    )

    records = []
    for i in range(p.warmup, len(visits) - 1):
        cur, nxt = visits[i], visits[i + 1]
        if nxt.network == cur.network:
            continue
        predicted = None if pred[i] < 0 else names[pred[i]]
        t = None if math.isnan(tth[i]) else tth[i]
        records.append(PredictionRecord(
            at=cur.end, current=cur.network, predicted=predicted,
            actual_next=nxt.network, correct=predicted == nxt.network,
            tth_predicted=t, tth_actual=float(cur.duration),
        ))
    if not records:
        raise InsufficientTraceError("no handovers left to score after warmup")

    wrong = sum(1 for r in records if not r.correct)
    errs = [abs(r.tth_predicted - r.tth_actual) for r in records if r.tth_predicted is not None]
    return EvaluationReport(
        node=visits[0].node,
        num_networks=len({e.network for e in visits}),
        num_waypoints=len(visits),
        path_features=path_features(visits),
        avg_visit_s=sum(e.duration for e in visits) / len(visits),
        total_duration_s=max(e.end for e in visits) - visits[0].start,
        error_margin_pct=100.0 * wrong / len(records),
        records=records,
        tth_mae_s=sum(errs) / len(errs) if errs else None,
    )


def replay_many(events: Sequence[VisitEvent], p: Params = Params(), backend: Optional[str] = None):
    """Replay every node in a multi-node trace; reports come back sorted by node id."""
    by_node = {}
    for e in events:
        by_node.setdefault(e.node, []).append(e)
    return [replay(by_node[n], p, backend) for n in sorted(by_node)]


@dataclass(frozen=True)
class ErrorDistribution:
    edges: Tuple[float, ...]
    density: Tuple[float, ...]
    cumulative: Tuple[float, ...]
    ecdf_x: Tuple[float, ...]
    ecdf_y: Tuple[float, ...]

    @property
    def median(self) -> float:
        """Smallest margin at which the empirical CDF reaches one half."""
        for x, y in zip(self.ecdf_x, self.ecdf_y):
            if y >= 0.5:
                return x
        return self.ecdf_x[-1]

    @property
    def median_bin(self) -> Tuple[float, float]:
        for i, c in enumerate(self.cumulative):
            if c >= 0.5:
                return self.edges[i], self.edges[i + 1]
        raise AssertionError("cumulative series must reach 1.0")

    def histogram_rows(self):
        for i, (d, c) in enumerate(zip(self.density, self.cumulative)):
            yield self.edges[i], self.edges[i + 1], d, c

    def ecdf_rows(self):
        return zip(self.ecdf_x, self.ecdf_y)


def error_distribution(reports, bins: int = 10) -> ErrorDistribution:
    """Bin per-node error margins over [0, 100] into probability mass per
    bin and its running sum, plus the exact empirical CDF.

    ``reports`` may be EvaluationReports or bare margins.
    """
    margins = [r.error_margin_pct if hasattr(r, "error_margin_pct") else float(r) for r in reports]
    if not margins:
        raise ValueError("no error margins to bin")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts, edges = np.histogram(margins, bins=bins, range=(0.0, 100.0))
    total = len(margins)
    cum = np.cumsum(counts)
    xs = sorted(margins)
    return ErrorDistribution(
        edges=tuple(float(x) for x in edges),
        density=tuple(float(c) / total for c in counts),
        # integer running counts over the total end at exactly 1.0
        cumulative=tuple(float(c) / total for c in cum),
        ecdf_x=tuple(xs),
        ecdf_y=tuple((i + 1) / total for i in range(total)),
    )


@dataclass(frozen=True)
class CategoryThresholds:
    duration_days: float = 10.0
    num_networks: int = 6
    waypoints: int = 20


def categorize(report: EvaluationReport, thresholds: CategoryThresholds = CategoryThresholds()):
    """(duration, AP count, waypoints) classes; a value equal to its threshold is the lower class."""
    return (
        "long" if report.duration_days > thresholds.duration_days else "short",
        "large" if report.num_networks > thresholds.num_networks else "small",
        "high" if report.num_waypoints > thresholds.waypoints else "low",
    )
