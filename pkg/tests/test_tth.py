import pytest
from hypothesis import given, strategies as st

from roamtrack.tth import (Notification, NotificationLatch, build_notification, should_notify,
                           update_tth)

from oracles import tth_sequence


def test_first_estimate_is_average():
    s = update_tth(None, 900)
    assert (s.tth_current, s.delta_t) == (900, 0)


def test_correction_by_previous_error():
    s = update_tth(update_tth(None, 900), d_avg=870, d_completed=840)
    assert s.delta_t == -60
    assert s.tth_current == 810
    assert s.tth_current == tth_sequence([900, 840, 0], [0, 900, 870])[2]


def test_delta_is_exact_difference():
    s0 = update_tth(None, 1234.5)
    s1 = update_tth(s0, 1000, 777.25)
    assert s1.delta_t == s1.d_prev - s0.tth_prev


def test_negative_estimate_clamps():
    s = update_tth(update_tth(None, 900), d_avg=100, d_completed=0)
    assert s.tth_current == 0


def test_constant_visits_fixed_point():
    s = None
    for _ in range(50):
        s = update_tth(s, 600, 600)
        assert s.tth_current == 600


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        update_tth(None, -1)


@given(st.lists(st.floats(0, 1e6), min_size=2, max_size=40),
       st.lists(st.floats(0, 1e6), min_size=2, max_size=40))
def test_matches_direct_recursion(durs, avgs):
    n = min(len(durs), len(avgs))
    durs, avgs = durs[:n], avgs[:n]
    want = tth_sequence(durs, avgs)
    s = None
    for i in range(1, n):
        s = update_tth(s, avgs[i], durs[i - 1])
        assert s.tth_current == want[i]
        assert s.tth_current >= 0


def _alternating(c, e, steps):
    s, dev = None, []
    durs = [c + e if i % 2 == 0 else c - e for i in range(steps + 1)]
    for i in range(1, steps + 1):
        s = update_tth(s, c, durs[i - 1])
        dev.append(s.tth_current - c)
    return dev


@given(st.floats(1e3, 1e5), st.floats(0, 10), st.integers(2, 15))
def test_alternating_durations_resonate(c, e, steps):
    # The correction feeds back with gain -1, so a period-2 input grows the
    # deviation by e per step until the zero clamp engages.
    dev = _alternating(c, e, steps)
    for t, x in enumerate(dev):
        assert abs(x) == pytest.approx(t * e, abs=1e-6)


@pytest.mark.xfail(strict=True, reason="recursion is marginally stable; deviation grows by e per step")
def test_alternating_deviation_bounded_by_two_e():
    assert all(abs(x) <= 2 * 60.0 for x in _alternating(900.0, 60.0, 10))


def test_should_notify_scenario():
    assert should_notify(360, 900, 60) is False
    assert should_notify(840, 900, 60) is True
    assert should_notify(780, 900, 60) is False
    assert should_notify(0, 0, 60) is True


def test_should_notify_window_positive():
    with pytest.raises(ValueError):
        should_notify(0, 0, 0)


@given(st.floats(0, 1e5), st.floats(0, 1e5), st.floats(1e-3, 1e4), st.floats(0, 1e5))
def test_should_notify_monotone_in_elapsed(elapsed, tth, window, more):
    if should_notify(elapsed, tth, window):
        assert should_notify(elapsed + more, tth, window)


def test_notification_record():
    assert build_notification("AP3", 60) == Notification("AP3", 60)
    assert build_notification("AP3", 0).tth_remaining == 0
    assert build_notification("AP3", -5).tth_remaining == 0
    assert build_notification("AP3", 60, node="mn").to_line() == "notify node=mn target=AP3 remaining_s=60"


def test_notification_needs_target():
    with pytest.raises(ValueError):
        build_notification(None, 60)


def test_latch_fires_once_per_visit():
    latch = NotificationLatch(60)
    fired = [latch.check(t, 900) for t in range(60, 1000, 60)]
    assert fired.count(True) == 1
    assert fired.index(True) == 13  # 14th minute
    latch.begin_visit()
    assert latch.check(900, 900)
