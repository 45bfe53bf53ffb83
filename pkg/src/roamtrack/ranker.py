"""Network ranking: instantaneous utility, EMA smoothing and target choice.

All arithmetic happens on natural logs of ranks. The utility raises a base
to an exponent equal to the visit count, which overflows doubles for
frequently visited networks; log values preserve ordering exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .model import AttractivenessMode, NetworkId, NetworkStats, Params, RankState
from .stats import NodeLedger

LOG_SATURATION = 709.0


def to_linear(log_r: float) -> float:
    """exp() with the exponent clamped to +-709; ``-inf`` maps to 0."""
    if log_r == -math.inf:
        return 0.0
    return math.exp(min(LOG_SATURATION, max(-LOG_SATURATION, log_r)))


def rank_exponent(s: NetworkStats) -> float:
    # rej == 0 would divide by zero; max(rej, 1) keeps v as the exponent.
    return s.visits / max(s.rej, 1)


def log_instant_rank(s: NetworkStats) -> float:
    """log of ``a**2 * (sqrt(d_avg) / (te + 1)) ** (v / max(rej, 1))``."""
    if s.attractiveness == 0.0 or s.d_avg == 0.0:
        return -math.inf
    e = rank_exponent(s)
    return 2.0 * math.log(s.attractiveness) + e * (0.5 * math.log(s.d_avg) - math.log(s.te + 1.0))


def instant_rank(s: NetworkStats) -> float:
    return to_linear(log_instant_rank(s))


def log_mix(log_prev: float, log_new: float, alpha: float) -> float:
    """log(alpha * exp(log_prev) + (1 - alpha) * exp(log_new))."""
    if alpha == 1.0:
        return log_prev
    if alpha == 0.0 or log_prev == log_new:
        return log_new
    x = math.log(alpha) + log_prev
    y = math.log(1.0 - alpha) + log_new
    if x == -math.inf and y == -math.inf:
        return -math.inf
    if x >= y:
        return x + math.log1p(math.exp(y - x))
    return y + math.log1p(math.exp(x - y))


def smooth_rank(
    prev: Optional[RankState],
    r_instant: float,
    alpha: float,
    log_r_instant: Optional[float] = None,
) -> RankState:
    """Advance the rank EMA by one tick; the first tick seeds it."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha {alpha} outside [0, 1]")
    if log_r_instant is None:
        if r_instant < 0 or not math.isfinite(r_instant):
            raise ValueError(f"rank must be finite and >= 0, got {r_instant!r}")
        log_r_instant = math.log(r_instant) if r_instant > 0 else -math.inf
    else:
        r_instant = to_linear(log_r_instant)
    if prev is None:
        return RankState(None, r_instant, r_instant, log_r_instant)
    log_s = log_mix(prev.log_r_smoothed, log_r_instant, alpha)
    # Pass linear values through untouched when the mix selects one side.
    if log_s == log_r_instant:
        r_s = r_instant
    elif log_s == prev.log_r_smoothed:
        r_s = prev.r_smoothed
    else:
        r_s = to_linear(log_s)
    return RankState(prev.r_smoothed, r_instant, r_s, log_s)


@dataclass(frozen=True)
class RankTable:
    per_network: Mapping[NetworkId, RankState]
    computed_at: float

    def __len__(self) -> int:
        return len(self.per_network)

    def __getitem__(self, network: NetworkId) -> RankState:
        return self.per_network[network]

    def __contains__(self, network) -> bool:
        return network in self.per_network

    def get(self, network: NetworkId) -> Optional[RankState]:
        return self.per_network.get(network)

    def ordered(self):
        """(network, state) pairs by descending rank, ties by network id."""
        return sorted(self.per_network.items(), key=lambda kv: (-kv[1].log_r_smoothed, kv[0]))


def select_target(table: RankTable, current: Optional[NetworkId]) -> Optional[NetworkId]:
    best = None
    best_log = -math.inf
    for network in sorted(table.per_network):
        if network == current:
            continue
        lr = table.per_network[network].log_r_smoothed
        if best is None or lr > best_log:
            best, best_log = network, lr
    return best


def resolve_attractiveness(ledger: NodeLedger, network: NetworkId, p: Params, vmax: int) -> float:
    if p.attractiveness_mode is AttractivenessMode.VISIT_DERIVED:
        return ledger.per_network[network].visits / (1.0 + vmax)
    return ledger.attractiveness.get(network, p.default_attractiveness)


def rank_all(
    ledger: NodeLedger,
    now: float,
    p: Params,
    prev: Optional[RankTable] = None,
) -> RankTable:
    """Rank every network in the ledger at time ``now``.

    ``prev`` carries the EMA state from the previous call; each call is one
    smoothing tick. Networks with rejections only get a zero rank.
    """
    if not ledger.per_network:
        raise ValueError("cannot rank an empty ledger")
    vmax = max(s.visits for s in ledger.per_network.values())
    out = {}
    for network in sorted(ledger.per_network):
        stats = ledger.per_network[network]
        if stats.visits > 0:
            snap = replace(
                stats,
                te=ledger.compute_te(network, now),
                attractiveness=resolve_attractiveness(ledger, network, p, vmax),
                total_visits_v=ledger.total_visits,
            )
            lr = log_instant_rank(snap)
        else:
            lr = -math.inf
        prev_state = prev.get(network) if prev is not None else None
        out[network] = smooth_rank(prev_state, to_linear(lr), p.alpha, log_r_instant=lr)
    return RankTable(per_network=out, computed_at=now)
