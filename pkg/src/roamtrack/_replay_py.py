"""Pure-Python replay kernel, built on the ledger/ranker objects.

Same contract as the compiled ``_replay_c.replay_arrays``: takes the
index-encoded event arrays and returns, per completed visit, the index of
the predicted target (-1 for none) and the TTH estimate (NaN for none).
"""

import math

from .engine import Replayer
from .model import VisitEvent, VisitKind


def replay_arrays(names, net, start, duration, is_rej, attr, alpha, gamma,
                  explicit, default_attr):
    from .model import AttractivenessMode, Params

    p = Params(
        alpha=alpha,
        gamma=gamma,
        attractiveness_mode=AttractivenessMode.EXPLICIT if explicit else AttractivenessMode.VISIT_DERIVED,
        default_attractiveness=default_attr,
    )
    index = {n: i for i, n in enumerate(names)}
    rp = Replayer("_", p)
    pred, tth = [], []
    for i in range(len(net)):
        a = attr[i]
        e = VisitEvent(
            node="_",
            network=names[net[i]],
            start=int(start[i]),
            duration=float(duration[i]),
            kind=VisitKind.REJECTION if is_rej[i] else VisitKind.COMPLETED,
            attractiveness=None if math.isnan(a) else float(a),
        )
        out = rp.feed(e)
        if out is None:
            continue
        pred.append(-1 if out.predicted is None else index[out.predicted])
        tth.append(math.nan if out.tth_predicted is None else out.tth_predicted)
    return pred, tth
