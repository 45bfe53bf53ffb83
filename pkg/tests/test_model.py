import math

import pytest
from hypothesis import given, strategies as st

from roamtrack.model import (AttractivenessMode, InvalidEventError, NetworkStats, Params,
                             VisitEvent, VisitKind, validate_event)


def test_validate_well_formed():
    assert validate_event(VisitEvent("mn1", "AP1", 100, 60)) is None


@pytest.mark.parametrize("kwargs, field", [
    (dict(network="", start=100, duration=60), "network"),
    (dict(network="AP1", start=100, duration=-5), "duration"),
    (dict(network="AP1", start=-1, duration=5), "start"),
])
def test_validate_rejects(kwargs, field):
    with pytest.raises(InvalidEventError) as exc:
        validate_event(VisitEvent(node="mn1", **kwargs))
    assert exc.value.field == field
    assert field in str(exc.value)


def test_zero_duration_allowed():
    validate_event(VisitEvent("mn1", "AP1", 0, 0, kind=VisitKind.REJECTION))
    validate_event(VisitEvent("mn1", "AP1", 0, 0))


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_constructors_reject_non_finite(bad):
    with pytest.raises(ValueError):
        VisitEvent("mn1", "AP1", 0, bad)
    with pytest.raises(ValueError):
        NetworkStats(d_avg=bad)
    with pytest.raises(ValueError):
        Params(alpha=bad)


def test_kind_from_string():
    assert VisitEvent("n", "AP", 0, 1, kind="rej").is_rejection


@pytest.mark.parametrize("kwargs", [
    dict(alpha=1.5), dict(gamma=-0.1), dict(notify_window=0), dict(warmup=-1),
])
def test_params_invariants(kwargs):
    with pytest.raises(ValueError):
        Params(**kwargs)


def test_params_mode_from_string():
    assert Params(attractiveness_mode="explicit").attractiveness_mode is AttractivenessMode.EXPLICIT


def test_stats_attractiveness_range():
    with pytest.raises(ValueError):
        NetworkStats(attractiveness=1.2)


ids = st.text(min_size=1, max_size=6)


@given(st.lists(ids, min_size=1, max_size=20))
def test_network_id_order_total(xs):
    s = sorted(xs)
    for a, b in zip(s, s[1:]):
        assert a <= b
        # antisymmetry
        if b <= a:
            assert a == b
    # byte order agrees with code point order
    assert sorted(xs, key=lambda x: x.encode("utf-8")) == s


@given(ids, ids, ids)
def test_network_id_order_transitive(a, b, c):
    if a <= b and b <= c:
        assert a <= c
