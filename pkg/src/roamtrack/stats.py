"""Per-node ledger of visited networks, fed one VisitEvent at a time."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .model import NetworkId, NetworkStats, Params, VisitEvent, validate_event


class LedgerError(ValueError):
    pass


@dataclass
class NodeLedger:
    node: str
    per_network: Dict[NetworkId, NetworkStats] = field(default_factory=dict)
    last_event_end: Optional[float] = None
    total_visits: int = 0
    last_start: Optional[int] = None
    # Running sum of completed visit durations, for node-wide averages.
    total_duration: float = 0.0
    attractiveness: Dict[NetworkId, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.per_network)

    def _admit(self, e: VisitEvent) -> NetworkStats:
        validate_event(e)
        if e.node != self.node:
            raise LedgerError(f"event for node {e.node!r} applied to ledger of {self.node!r}")
        if self.last_start is not None and e.start < self.last_start:
            raise LedgerError(
                f"events must be applied in start order: {e.start} < {self.last_start}"
            )
        self.last_start = e.start
        if self.last_event_end is None or e.end > self.last_event_end:
            self.last_event_end = e.end
        if e.attractiveness is not None:
            self.attractiveness[e.network] = e.attractiveness
        stats = self.per_network.get(e.network)
        if stats is None:
            stats = self.per_network[e.network] = NetworkStats()
        return stats

    def apply_visit(self, e: VisitEvent, p: Params) -> "NodeLedger":
        if e.is_rejection:
            raise LedgerError("apply_visit needs a completed visit")
        stats = self._admit(e)
        if stats.visits == 0 or stats.d_avg == e.duration:
            # seed, or constant input: the EMA fixed point, kept exact
            stats.d_avg = float(e.duration)
        else:
            stats.d_avg = p.gamma * stats.d_avg + (1.0 - p.gamma) * e.duration
        stats.visits += 1
        stats.d_last = float(e.duration)
        stats.last_end = e.end
        stats.te = 0.0
        self.total_visits += 1
        self.total_duration += e.duration
        stats.total_visits_v = self.total_visits
        return self

    def apply_rejection(self, e: VisitEvent) -> "NodeLedger":
        if not e.is_rejection:
            raise LedgerError("apply_rejection needs a rejection event")
        stats = self._admit(e)
        stats.rej += 1
        return self

    def apply(self, e: VisitEvent, p: Params) -> "NodeLedger":
        if e.is_rejection:
            return self.apply_rejection(e)
        return self.apply_visit(e, p)

    def compute_te(self, network: NetworkId, now: float) -> float:
        """Seconds since the most recent visit to ``network`` ended.

        Overlapping visits can leave ``now`` before that end; the gap is
        clamped to zero.
        """
        stats = self.per_network.get(network)
        if stats is None:
            raise KeyError(f"unknown network {network!r}")
        if stats.last_end is None:
            raise LedgerError(f"network {network!r} has no completed visit")
        return max(0.0, now - stats.last_end)

    def mean_duration(self) -> float:
        if self.total_visits == 0:
            return 0.0
        return self.total_duration / self.total_visits


def apply_visit(ledger: NodeLedger, e: VisitEvent, p: Params) -> NodeLedger:
    return ledger.apply_visit(e, p)


def apply_rejection(ledger: NodeLedger, e: VisitEvent) -> NodeLedger:
    return ledger.apply_rejection(e)


def compute_te(ledger: NodeLedger, network: NetworkId, now: float) -> float:
    return ledger.compute_te(network, now)


def build_ledger(node: str, events, p: Params) -> NodeLedger:
    ledger = NodeLedger(node)
    for e in events:
        ledger.apply(e, p)
    return ledger
