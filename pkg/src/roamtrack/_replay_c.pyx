# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled replay kernel. Must agree bit-for-bit with _replay_py."""

import numpy as np
from libc.math cimport log, log1p, exp, INFINITY, NAN, isnan


cdef inline double log_mix(double lp, double ln, double alpha) noexcept nogil:
    cdef double x, y
    if alpha == 1.0:
        return lp
    if alpha == 0.0 or lp == ln:
        return ln
    x = log(alpha) + lp
    y = log(1.0 - alpha) + ln
    if x == -INFINITY and y == -INFINITY:
        return -INFINITY
    if x >= y:
        return x + log1p(exp(y - x))
    return y + log1p(exp(x - y))


def replay_arrays(names, net_in, start_in, duration_in, is_rej_in, attr_in,
                  double alpha, double gamma, bint explicit, double default_attr):
    cdef const int[::1] net = np.ascontiguousarray(net_in, dtype=np.int32)
    cdef const long long[::1] start = np.ascontiguousarray(start_in, dtype=np.int64)
    cdef const double[::1] dur = np.ascontiguousarray(duration_in, dtype=np.float64)
    cdef const unsigned char[::1] rej_flag = np.ascontiguousarray(is_rej_in, dtype=np.uint8)
    cdef const double[::1] attr = np.ascontiguousarray(attr_in, dtype=np.float64)
    cdef Py_ssize_t n = net.shape[0]
    cdef Py_ssize_t m = len(names)

    visits_a = np.zeros(m, dtype=np.int64)
    rej_a = np.zeros(m, dtype=np.int64)
    seen_a = np.zeros(m, dtype=np.uint8)
    has_state_a = np.zeros(m, dtype=np.uint8)
    attr_set_a = np.zeros(m, dtype=np.uint8)
    d_avg_a = np.zeros(m, dtype=np.float64)
    last_end_a = np.zeros(m, dtype=np.float64)
    attr_val_a = np.zeros(m, dtype=np.float64)
    log_s_a = np.zeros(m, dtype=np.float64)
    cdef long long[::1] visits = visits_a
    cdef long long[::1] rej = rej_a
    cdef unsigned char[::1] seen = seen_a
    cdef unsigned char[::1] has_state = has_state_a
    cdef unsigned char[::1] attr_set = attr_set_a
    cdef double[::1] d_avg = d_avg_a
    cdef double[::1] last_end = last_end_a
    cdef double[::1] attr_val = attr_val_a
    cdef double[::1] log_s = log_s_a

    pred_a = np.empty(n, dtype=np.int32)
    tth_a = np.empty(n, dtype=np.float64)
    cdef int[::1] pred = pred_a
    cdef double[::1] tth_out = tth_a

    cdef Py_ssize_t i, k, j, nv = 0, best
    cdef long long total_visits = 0, vmax, r
    cdef double total_duration = 0.0, now, te, a, lr, e, best_log, d, davg_t, delta
    cdef double prev_dur = 0.0, tth_prev = 0.0, tth_cur
    cdef bint have_prev = False, have_tth = False

    with nogil:
        for i in range(n):
            k = net[i]
            if not isnan(attr[i]):
                attr_val[k] = attr[i]
                attr_set[k] = 1
            seen[k] = 1
            if rej_flag[i]:
                rej[k] += 1
                continue

            # TTH estimate fixed at visit start.
            d = dur[i]
            if have_prev:
                if visits[k] > 0:
                    davg_t = d_avg[k]
                else:
                    davg_t = total_duration / total_visits
                if not have_tth:
                    tth_cur = davg_t
                    have_tth = True
                else:
                    delta = prev_dur - tth_prev
                    tth_cur = davg_t + delta
                    if tth_cur < 0.0:
                        tth_cur = 0.0
                tth_prev = tth_cur
                tth_out[nv] = tth_cur
            else:
                tth_out[nv] = NAN

            if visits[k] == 0 or d_avg[k] == d:
                d_avg[k] = d
            else:
                d_avg[k] = gamma * d_avg[k] + (1.0 - gamma) * d
            visits[k] += 1
            now = <double>start[i] + d
            last_end[k] = now
            total_visits += 1
            total_duration += d

            vmax = 0
            for j in range(m):
                if seen[j] and visits[j] > vmax:
                    vmax = visits[j]
            best = -1
            best_log = -INFINITY
            for j in range(m):
                if not seen[j]:
                    continue
                lr = -INFINITY
                if visits[j] > 0:
                    if explicit:
                        a = attr_val[j] if attr_set[j] else default_attr
                    else:
                        a = visits[j] / (1.0 + vmax)
                    if a != 0.0 and d_avg[j] != 0.0:
                        te = now - last_end[j]
                        if te < 0.0:
                            te = 0.0
                        r = rej[j] if rej[j] > 1 else 1
                        e = (<double>visits[j]) / (<double>r)
                        lr = 2.0 * log(a) + e * (0.5 * log(d_avg[j]) - log(te + 1.0))
                if has_state[j]:
                    log_s[j] = log_mix(log_s[j], lr, alpha)
                else:
                    log_s[j] = lr
                    has_state[j] = 1
                if j != k and (best == -1 or log_s[j] > best_log):
                    best = j
                    best_log = log_s[j]
            pred[nv] = best
            prev_dur = d
            have_prev = True
            nv += 1

    return pred_a[:nv].tolist(), tth_a[:nv].tolist()
