"""Selects the replay kernel at import time.

The compiled extension is used when it was built; otherwise, or when
``ROAMTRACK_PURE_PYTHON=1`` is set, the pure-Python kernel is used.
"""

import os

from . import _replay_py

if os.environ.get("ROAMTRACK_PURE_PYTHON") == "1":
    replay_arrays = _replay_py.replay_arrays
    BACKEND = "python"
else:
    try:
        from ._replay_c import replay_arrays
        BACKEND = "cython"
    except ImportError:
        replay_arrays = _replay_py.replay_arrays
        BACKEND = "python"

KERNELS = {"python": _replay_py.replay_arrays}
try:
    from ._replay_c import replay_arrays as _c_replay

    KERNELS["cython"] = _c_replay
except ImportError:
    pass


def get_kernel(backend=None):
    if backend is None:
        return replay_arrays
    try:
        return KERNELS[backend]
    except KeyError:
        raise ValueError(f"kernel backend {backend!r} unavailable; have {sorted(KERNELS)}") from None
