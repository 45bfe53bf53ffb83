"""Time-to-handover recursion and the periodic notification check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import NetworkId, TthState


def update_tth(state: Optional[TthState], d_avg: float, d_completed: float = 0.0) -> TthState:
    """Next TTH estimate from the active network's average visit duration.

    The correction term is the signed error of the previous estimate,
    ``d_completed - state.tth_prev``; negative estimates clamp to zero.
    """
    if d_avg < 0 or d_completed < 0:
        raise ValueError("durations must be >= 0")
    if state is None:
        return TthState(tth_prev=float(d_avg), d_prev=float(d_completed), delta_t=0.0,
                        tth_current=float(d_avg))
    delta_t = d_completed - state.tth_prev
    tth = max(0.0, d_avg + delta_t)
    return TthState(tth_prev=tth, d_prev=float(d_completed), delta_t=delta_t, tth_current=tth)


def should_notify(visit_elapsed: float, tth: float, window: float) -> bool:
    """True when the next periodic check would land past the predicted handover."""
    if window <= 0:
        raise ValueError("window must be > 0")
    return tth - visit_elapsed <= window


@dataclass(frozen=True)
class Notification:
    """Advisory record for a mobility manager. Carries no handover action."""

    target: NetworkId
    tth_remaining: float
    node: str = ""

    def to_line(self) -> str:
        return f"notify node={self.node} target={self.target} remaining_s={int(round(self.tth_remaining))}"


def build_notification(target: NetworkId, tth_remaining: float, node: str = "") -> Notification:
    if not target:
        raise ValueError("notification needs a target")
    return Notification(target=target, tth_remaining=max(0.0, float(tth_remaining)), node=node)


class NotificationLatch:
    """Emits at most one notification per visit.

    Call :meth:`begin_visit` when attaching, then :meth:`check` at each
    periodic tick with the elapsed visit time.
    """

    def __init__(self, window: float):
        if window <= 0:
            raise ValueError("window must be > 0")
        self.window = window
        self.fired = False

    def begin_visit(self) -> None:
        self.fired = False

    def check(self, visit_elapsed: float, tth: float) -> bool:
        if self.fired:
            return False
        if should_notify(visit_elapsed, tth, self.window):
            self.fired = True
            return True
        return False
