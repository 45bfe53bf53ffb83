"""Domain types for roaming estimation: visits, per-network statistics,
rank and time-to-handover state, and tuning parameters."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

# Network identifiers are plain strings; Python's str ordering is
# lexicographic by code point, which matches UTF-8 byte order.
NetworkId = str


class InvalidEventError(ValueError):
    """Raised when a VisitEvent breaks one of its invariants."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class VisitKind(str, enum.Enum):
    COMPLETED = "visit"
    REJECTION = "rej"


class AttractivenessMode(str, enum.Enum):
    EXPLICIT = "explicit"
    VISIT_DERIVED = "visit-derived"


def _require_finite(name: str, value: float) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"{name} must be numeric, got {type(value).__name__}")
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class VisitEvent:
    """One attachment of ``node`` to ``network`` (or a refused attachment).

    ``start`` is in integer seconds; ``duration`` in seconds. Invariants
    beyond finiteness are checked by :func:`validate_event` so that
    malformed records can still be represented and reported.
    """

    node: str
    network: NetworkId
    start: int
    duration: float
    kind: VisitKind = VisitKind.COMPLETED
    attractiveness: Optional[float] = None

    def __post_init__(self):
        _require_finite("start", self.start)
        _require_finite("duration", self.duration)
        if self.attractiveness is not None:
            _require_finite("attractiveness", self.attractiveness)
        if not isinstance(self.kind, VisitKind):
            object.__setattr__(self, "kind", VisitKind(self.kind))

    @property
    def end(self) -> float:
        return self.start + self.duration

    @property
    def is_rejection(self) -> bool:
        return self.kind is VisitKind.REJECTION


def validate_event(e: VisitEvent) -> None:
    """Raise :class:`InvalidEventError` naming the offending field, else return None."""
    if not e.network:
        raise InvalidEventError("network", "empty network id")
    if not e.node:
        raise InvalidEventError("node", "empty node id")
    if e.start < 0:
        raise InvalidEventError("start", f"negative start {e.start}")
    if e.duration < 0:
        raise InvalidEventError("duration", f"negative duration {e.duration}")
    if e.attractiveness is not None and not 0.0 <= e.attractiveness <= 1.0:
        raise InvalidEventError("attractiveness", f"{e.attractiveness} outside [0, 1]")


@dataclass
class NetworkStats:
    """Accumulated visit statistics of one node towards one network.

    ``visits`` is the per-network count, ``total_visits_v`` the node-wide
    total at the time the row was last refreshed. ``te`` is filled in at
    ranking time; the ledger keeps ``last_end`` to derive it.
    """

    visits: int = 0
    total_visits_v: int = 0
    d_last: float = 0.0
    d_avg: float = 0.0
    te: float = 0.0
    rej: int = 0
    attractiveness: float = 1.0
    last_end: Optional[float] = None

    def __post_init__(self):
        for name in ("d_last", "d_avg", "te", "attractiveness"):
            _require_finite(name, getattr(self, name))
        if self.visits < 0 or self.rej < 0 or self.total_visits_v < 0:
            raise ValueError("visit and rejection counts must be >= 0")
        if self.d_avg < 0 or self.te < 0:
            raise ValueError("d_avg and te must be >= 0")
        if not 0.0 <= self.attractiveness <= 1.0:
            raise ValueError(f"attractiveness {self.attractiveness} outside [0, 1]")


@dataclass(frozen=True)
class RankState:
    """Smoothed rank of one network.

    Linear fields are saturated copies for display; ``log_r_smoothed`` is
    the authoritative value and is ``-inf`` for a zero rank.
    """

    r_prev: Optional[float]
    r_instant: float
    r_smoothed: float
    log_r_smoothed: float

    @property
    def is_zero(self) -> bool:
        return self.log_r_smoothed == -math.inf


@dataclass(frozen=True)
class TthState:
    tth_prev: float
    d_prev: float
    delta_t: float
    tth_current: float


@dataclass(frozen=True)
class Params:
    alpha: float = 0.5
    gamma: float = 0.5
    notify_window: float = 60.0
    attractiveness_mode: AttractivenessMode = AttractivenessMode.VISIT_DERIVED
    warmup: int = 1
    default_attractiveness: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "gamma", "notify_window", "default_attractiveness"):
            _require_finite(name, getattr(self, name))
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha {self.alpha} outside [0, 1]")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma {self.gamma} outside [0, 1]")
        if self.notify_window <= 0:
            raise ValueError("notify_window must be > 0")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")
        if not 0.0 <= self.default_attractiveness <= 1.0:
            raise ValueError("default_attractiveness outside [0, 1]")
        if not isinstance(self.attractiveness_mode, AttractivenessMode):
            object.__setattr__(
                self, "attractiveness_mode", AttractivenessMode(self.attractiveness_mode)
            )
