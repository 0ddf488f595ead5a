"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
twin is used. Setting ``CHEBY_RAMSEY_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("CHEBY_RAMSEY_PURE") == "1":
        raise ImportError("pure backend requested")
    from . import _ckernels as _active
except ImportError:
    _active = _pykernels

BACKEND = _active.BACKEND

# coordinates above this magnitude go to the arbitrary-precision fallback
C_INT_LIMIT = 1 << 60


def available_backends():
    names = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        names["cython"] = _ckernels
    return names


def get_backend(name=None):
    if name is None:
        return _active
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None


def copy_triples(xs, ys, a, b, c, lo=0, hi=None, colors=None, first_only=False):
    mod = _active
    if mod is not _pykernels:
        bound = max([abs(v) for v in xs] + [abs(v) for v in ys] + [c], default=0)
        if 4 * bound >= C_INT_LIMIT:
            mod = _pykernels
    return mod.copy_triples(xs, ys, a, b, c, lo, hi, colors, first_only)


def hyper_color(n, edges, k, node_limit=0):
    return _active.hyper_color(n, edges, k, node_limit)


def max_free_subset(n, edges, node_limit=0):
    return _active.max_free_subset(n, edges, node_limit)
