"""Stepwise replay of one node's events through ledger, ranker and TTH."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .model import NetworkId, Params, TthState, VisitEvent
from .ranker import RankTable, rank_all, select_target
from .stats import NodeLedger
from .tth import Notification, NotificationLatch, build_notification, update_tth


@dataclass(frozen=True)
class VisitOutcome:
    """What the engine knew when visit ``index`` (completed visits only) ended."""

    index: int
    event: VisitEvent
    tth_predicted: Optional[float]
    predicted: Optional[NetworkId]
    table: RankTable
    notifications: tuple = ()


class Replayer:
    """Feeds events in order; ranks are recomputed at every visit end.

    The TTH estimate for a visit is fixed when the visit starts, from the
    active network's average duration (node-wide mean if the network is
    new) and the previous visit's actual duration.
    """

    def __init__(self, node: str, p: Params):
        self.p = p
        self.ledger = NodeLedger(node)
        self.table: Optional[RankTable] = None
        self.tth: Optional[TthState] = None
        self.visits_seen = 0
        self._prev_duration: Optional[float] = None

    def _start_visit(self, e: VisitEvent) -> Optional[float]:
        if self._prev_duration is None:
            return None
        stats = self.ledger.per_network.get(e.network)
        if stats is not None and stats.visits > 0:
            d_avg = stats.d_avg
        else:
            d_avg = self.ledger.mean_duration()
        self.tth = update_tth(self.tth, d_avg, self._prev_duration)
        return self.tth.tth_current

    def peek_table(self, now: float) -> RankTable:
        """Ranks at ``now`` without advancing the rank EMA."""
        return rank_all(self.ledger, now, self.p, self.table)

    def peek_target(self, current: NetworkId, now: float) -> Optional[NetworkId]:
        if not self.ledger.per_network:
            return None
        return select_target(self.peek_table(now), current)

    def feed(self, e: VisitEvent, notify: bool = False) -> Optional[VisitOutcome]:
        """Apply one event. Returns an outcome for completed visits, None for rejections."""
        if e.is_rejection:
            self.ledger.apply_rejection(e)
            return None
        tth = self._start_visit(e)
        notes: List[Notification] = []
        if notify and tth is not None:
            notes = self._periodic_checks(e, tth)
        self.ledger.apply_visit(e, self.p)
        self.table = rank_all(self.ledger, e.end, self.p, self.table)
        predicted = select_target(self.table, e.network)
        out = VisitOutcome(self.visits_seen, e, tth, predicted, self.table, tuple(notes))
        self.visits_seen += 1
        self._prev_duration = e.duration
        return out

    def _periodic_checks(self, e: VisitEvent, tth: float) -> List[Notification]:
        latch = NotificationLatch(self.p.notify_window)
        window = self.p.notify_window
        tick = 1
        while tick * window <= e.duration:
            elapsed = tick * window
            if latch.check(elapsed, tth):
                target = self.peek_target(e.network, e.start + elapsed)
                if target is None:
                    return []
                return [timed_notification(target, tth - elapsed, e.node,
                                           at=e.start + elapsed, elapsed=elapsed)]
            tick += 1
        return []


@dataclass(frozen=True)
class TimedNotification(Notification):
    at: float = 0.0
    elapsed: float = 0.0


def timed_notification(target, tth_remaining, node, at, elapsed) -> TimedNotification:
    base = build_notification(target, tth_remaining, node)
    return TimedNotification(target=base.target, tth_remaining=base.tth_remaining,
                              node=node, at=at, elapsed=elapsed)
