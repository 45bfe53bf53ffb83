from collections import Counter
from dataclasses import replace

import pytest

from roamtrack import synth
from roamtrack.model import validate_event
from roamtrack.synth import InfeasibleProfileError, Profile, generate


@pytest.mark.parametrize("name", sorted(synth.ARCHETYPES))
def test_deterministic(name):
    p = synth.ARCHETYPES[name](seed=3)
    assert generate(p) == generate(p)
    assert generate(p) != generate(synth.ARCHETYPES[name](seed=4))


@pytest.mark.parametrize("name", sorted(synth.ARCHETYPES))
@pytest.mark.parametrize("seed", range(5))
def test_counts_and_span(name, seed):
    p = synth.ARCHETYPES[name](seed=seed)
    ev = generate(p)
    for e in ev:
        validate_event(e)
    assert len(ev) == p.num_waypoints
    assert len({e.network for e in ev}) == p.num_networks
    span = max(e.end for e in ev) - ev[0].start
    assert abs(span - p.total_duration_s) <= 0.01 * p.total_duration_s
    assert all(a.start <= b.start for a, b in zip(ev, ev[1:]))
    assert all(a.end <= b.start for a, b in zip(ev, ev[1:]))


def test_mn45_dominant_share():
    c = Counter(e.network for e in generate(synth.mn45_like()))
    assert c["FSA"] == 22


def test_mn34_literal_shape():
    # 14 waypoints leave too few dominant visits to bracket 7 detours
    with pytest.raises(InfeasibleProfileError):
        generate(synth.mn34_like(waypoints=14))
    ev = generate(replace(synth.mn34_like(waypoints=14), layout="random"))
    c = Counter(e.network for e in ev)
    assert len(c) == 9 and len(ev) == 14
    assert sorted(c.values()) == [1] * 7 + [2, 5]


def test_mn34_shape():
    ev = generate(synth.mn34_like())
    c = Counter(e.network for e in ev)
    assert len(c) == 9 and len(ev) == 64
    assert sorted(c.values())[:7] == [1] * 7 and sorted(c.values())[7] > 1
    # every single-visit network is a detour from and back to the dominant one
    seq = [e.network for e in ev]
    for i, n in enumerate(seq):
        if c[n] == 1:
            assert seq[i - 1] == "AP1" and seq[i + 1] == "AP1"


def test_blocks_not_revisited():
    seq = [e.network for e in generate(synth.mn90_like())]
    last = {n: i for i, n in enumerate(seq)}
    first = {n: seq.index(n) for n in set(seq)}
    spans = sorted((first[n], last[n]) for n in first)
    # networks in different blocks never interleave
    blocks = {}
    for n in first:
        blocks.setdefault(min(first[m] for m in first if not (last[m] < first[n] or last[n] < first[m])), []).append(n)
    assert len(blocks) >= 3
    assert spans[0][0] == 0


def test_alternating_order():
    seq = [e.network for e in generate(synth.alternating_two())]
    assert seq == ["A", "B"] * 5


def test_distinct():
    ev = generate(synth.all_distinct())
    assert len({e.network for e in ev}) == len(ev) == 20


@pytest.mark.parametrize("kw", [
    dict(num_networks=5, num_waypoints=3, total_duration_s=100),
    dict(num_networks=0, num_waypoints=3, total_duration_s=100),
    dict(num_networks=2, num_waypoints=3, total_duration_s=0),
    dict(num_networks=2, num_waypoints=3, total_duration_s=100, layout="spiral"),
    dict(num_networks=2, num_waypoints=3, total_duration_s=100, layout="distinct"),
    dict(num_networks=2, num_waypoints=3, total_duration_s=100, layout="excursion"),
    dict(num_networks=3, num_waypoints=4, total_duration_s=100, singletons=4),
    dict(num_networks=5, num_waypoints=6, total_duration_s=100, layout="excursion",
         dominant="AP1", singletons=4),
    dict(num_networks=2, num_waypoints=4, total_duration_s=100, names=("A",)),
])
def test_infeasible(kw):
    with pytest.raises(InfeasibleProfileError):
        generate(Profile(**kw))
