"""Seeded synthetic visit traces shaped like the node categories used for
evaluation (few/many APs, short/long roaming, dominant networks, ...)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .model import VisitEvent

LAYOUTS = ("random", "alternating", "distinct", "blocks", "excursion")


class InfeasibleProfileError(ValueError):
    pass


@dataclass(frozen=True)
class Profile:
    """What to generate.

    ``layout`` orders the visits:

    * ``random``: shuffled, consecutive repeats avoided where possible
    * ``alternating``: round-robin over networks in name order
    * ``distinct``: every network exactly once
    * ``blocks``: networks occupy consecutive timeslots of
      ``block_width`` networks each and are not revisited afterwards
    * ``excursion``: the frequently visited networks alternate; every
      single-visit network is a detour that leaves from and returns to
      the dominant network
    """

    num_networks: int
    num_waypoints: int
    total_duration_s: int
    node: str = "mn"
    layout: str = "random"
    dominant: Optional[str] = None
    dominant_fraction: float = 0.0
    dominant_duration_factor: float = 1.0
    singletons: int = 0
    singleton_duration_factor: float = 1.0
    block_width: int = 1
    duration_sigma: float = 0.6
    network_spread: float = 0.4
    gap_range: Tuple[float, float] = (0.05, 0.3)
    names: Optional[Tuple[str, ...]] = None
    start: int = 0
    seed: int = 0

    def network_names(self) -> List[str]:
        if self.names is not None:
            if len(self.names) != self.num_networks:
                raise InfeasibleProfileError("names must list every network")
            names = list(self.names)
        else:
            width = len(str(self.num_networks))
            names = [f"AP{i + 1:0{width}d}" for i in range(self.num_networks)]
        if self.dominant is not None and self.dominant not in names:
            names[0] = self.dominant
        return names


def _check(p: Profile) -> None:
    if p.num_networks <= 0 or p.num_waypoints <= 0 or p.total_duration_s <= 0:
        raise InfeasibleProfileError("counts and total duration must be > 0")
    if p.num_networks > p.num_waypoints:
        raise InfeasibleProfileError(
            f"{p.num_networks} networks cannot fit in {p.num_waypoints} waypoints")
    if p.layout not in LAYOUTS:
        raise InfeasibleProfileError(f"unknown layout {p.layout!r}")
    if not 0.0 <= p.dominant_fraction <= 1.0:
        raise InfeasibleProfileError("dominant_fraction outside [0, 1]")
    if p.singletons < 0 or p.singletons > p.num_networks:
        raise InfeasibleProfileError("singletons outside [0, num_networks]")
    if p.dominant_duration_factor <= 0 or p.singleton_duration_factor <= 0:
        raise InfeasibleProfileError("duration factors must be > 0")
    lo, hi = p.gap_range
    if lo < 0 or hi < lo:
        raise InfeasibleProfileError("gap_range must satisfy 0 <= lo <= hi")
    if p.layout == "distinct" and p.num_networks != p.num_waypoints:
        raise InfeasibleProfileError("distinct layout needs one waypoint per network")
    if p.layout == "excursion" and p.dominant is None:
        raise InfeasibleProfileError("excursion layout needs a dominant network")
    if p.block_width < 1:
        raise InfeasibleProfileError("block_width must be >= 1")


def _singletons(p: Profile, names: List[str]) -> List[str]:
    # Single-visit networks are taken from the end of the name list.
    pool = [n for n in names if n != p.dominant]
    return pool[len(pool) - p.singletons:] if p.singletons else []


def _allocate(p: Profile, names: List[str], rng) -> dict:
    counts = {}
    dom = p.dominant
    pool = [n for n in names if n != dom]
    singles = _singletons(p, names)
    if dom is not None and len(singles) < p.singletons:
        raise InfeasibleProfileError("dominant network cannot also be a single-visit network")
    for n in singles:
        counts[n] = 1
    remaining = p.num_waypoints - len(singles)
    others = [n for n in pool if n not in counts]
    if dom is not None:
        d = int(round(p.dominant_fraction * p.num_waypoints))
        if not others:
            d = remaining
        # leave the other networks two visits each when that still fits
        reserve = 2 * len(others) if remaining - 2 * len(others) >= 1 else len(others)
        d = max(1, min(d, remaining - reserve))
        counts[dom] = d
        remaining -= d
    if others:
        if remaining < len(others):
            raise InfeasibleProfileError("not enough waypoints for the requested networks")
        floor = 2 if remaining >= 2 * len(others) else 1
        base = {n: floor for n in others}
        extra = remaining - floor * len(others)
        if extra:
            draws = rng.multinomial(extra, [1.0 / len(others)] * len(others))
            for n, k in zip(others, draws):
                base[n] += int(k)
        counts.update(base)
    elif remaining:
        raise InfeasibleProfileError("waypoints left over with no network to absorb them")
    return {n: counts[n] for n in names}


def _no_repeat_order(counts: dict, rng) -> List[str]:
    left = dict(counts)
    seq: List[str] = []
    while any(left.values()):
        cands = [n for n, c in left.items() if c > 0 and (not seq or n != seq[-1])]
        if not cands:
            cands = [n for n, c in left.items() if c > 0]
        w = np.array([left[n] for n in cands], dtype=float)
        pick = cands[int(rng.choice(len(cands), p=w / w.sum()))]
        seq.append(pick)
        left[pick] -= 1
    return seq


def _order(p: Profile, counts: dict, names: List[str], rng) -> List[str]:
    if p.layout == "random":
        return _no_repeat_order(counts, rng)
    if p.layout == "alternating":
        left = dict(counts)
        seq = []
        while any(left.values()):
            for n in names:
                if left[n]:
                    seq.append(n)
                    left[n] -= 1
        return seq
    if p.layout == "distinct":
        return [names[i] for i in rng.permutation(len(names))]
    if p.layout == "blocks":
        order = [names[i] for i in rng.permutation(len(names))]
        seq = []
        for b in range(0, len(order), p.block_width):
            group = {n: counts[n] for n in order[b:b + p.block_width]}
            seq.extend(_no_repeat_order(group, rng))
        return seq
    # excursion
    dom = p.dominant
    singles = _singletons(p, names)
    trips = len(singles)
    back = dict((n, c) for n, c in counts.items() if n not in singles)
    back[dom] -= trips
    if back[dom] < 1:
        raise InfeasibleProfileError(
            f"dominant network needs more than {trips} visits to host every excursion")
    backbone = _no_repeat_order(back, rng)
    hosts = [i for i, n in enumerate(backbone) if n == dom]
    where = sorted(rng.choice(hosts, size=trips, replace=True).tolist()) if trips else []
    order_s = [singles[i] for i in rng.permutation(trips)] if trips else []
    seq = []
    k = 0
    for i, n in enumerate(backbone):
        seq.append(n)
        while k < trips and where[k] == i:
            seq.extend([order_s[k], dom])
            k += 1
    return seq


def _timeline(p: Profile, seq: List[str], names: List[str], rng) -> Tuple[List[int], List[int]]:
    medians = {n: float(np.exp(rng.normal(0.0, p.network_spread))) for n in names}
    if p.dominant is not None:
        medians[p.dominant] *= p.dominant_duration_factor
    for n in _singletons(p, names):
        medians[n] *= p.singleton_duration_factor
    raw = np.array([medians[n] * rng.lognormal(0.0, p.duration_sigma) for n in seq])
    gaps = rng.uniform(p.gap_range[0], p.gap_range[1], size=max(len(seq) - 1, 0))
    scale = p.total_duration_s / (raw.sum() + gaps.sum())
    durs = [max(1, int(round(x * scale))) for x in raw]
    gap_s = [int(round(g * scale)) for g in gaps]
    starts = [p.start]
    for d, g in zip(durs, gap_s):
        starts.append(starts[-1] + d + g)
    # Absorb rounding in the final visit so the span hits the target.
    durs[-1] = max(1, p.start + p.total_duration_s - starts[-1])
    return starts, durs


def generate(p: Profile) -> List[VisitEvent]:
    """Deterministic trace for ``p``; same profile and seed, same events."""
    _check(p)
    rng = np.random.default_rng(p.seed)
    names = p.network_names()
    counts = _allocate(p, names, rng)
    seq = _order(p, counts, names, rng)
    starts, durs = _timeline(p, seq, names, rng)
    events = [VisitEvent(node=p.node, network=n, start=s, duration=d)
              for n, s, d in zip(seq, starts, durs)]
    events.sort(key=lambda e: (e.start, e.network))
    return events


# -- archetypes ----------------------------------------------------------------

def alternating_two(seed: int = 0, waypoints: int = 10, node: str = "alt") -> Profile:
    return Profile(num_networks=2, num_waypoints=waypoints, total_duration_s=waypoints * 2400,
                   node=node, layout="alternating", names=("A", "B"), seed=seed)


def all_distinct(seed: int = 0, networks: int = 20, node: str = "distinct") -> Profile:
    return Profile(num_networks=networks, num_waypoints=networks,
                   total_duration_s=networks * 3000, node=node, layout="distinct", seed=seed)


def mn34_like(seed: int = 0, waypoints: int = 64, node: str = "mn34") -> Profile:
    """9 networks, 7 visited once; two frequent networks with longer visits.

    The single-visit networks are short detours from the dominant network.
    """
    return Profile(num_networks=9, num_waypoints=waypoints, total_duration_s=waypoints * 3500,
                   node=node, layout="excursion", dominant="AP1",
                   dominant_fraction=0.5, dominant_duration_factor=2.0,
                   singletons=7, singleton_duration_factor=0.3, seed=seed)


def mn90_like(seed: int = 0, node: str = "mn90") -> Profile:
    """7 networks, 29 waypoints, each network busy in its own timeslot only."""
    return Profile(num_networks=7, num_waypoints=29, total_duration_s=1295067, node=node,
                   layout="blocks", block_width=2, seed=seed)


def mn45_like(seed: int = 0, node: str = "mn45") -> Profile:
    return Profile(num_networks=7, num_waypoints=55, total_duration_s=621978, node=node,
                   layout="random", dominant="FSA", dominant_fraction=0.4,
                   dominant_duration_factor=2.0, seed=seed)


ARCHETYPES = {
    "alternating": alternating_two,
    "distinct": all_distinct,
    "mn34": mn34_like,
    "mn45": mn45_like,
    "mn90": mn90_like,
}
