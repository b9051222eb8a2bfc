"""Hot inner loops.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with identical semantics.  The numba path is used when numba
imports cleanly and ``SURFSIG_DISABLE_NUMBA`` is unset or ``0``; set it to
``1`` to force the numpy path (useful for debugging and for the benchmark).
"""

from __future__ import annotations

import os

import numpy as np

from . import _numpy

_DISABLED = os.environ.get("SURFSIG_DISABLE_NUMBA", "0") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("disabled by SURFSIG_DISABLE_NUMBA")
    from . import _numba
except ImportError:  # pragma: no cover - depends on environment
    _numba = None

BACKEND = "numba" if _numba is not None else "numpy"
_impl = _numba if _numba is not None else _numpy

__all__ = [
    "BACKEND",
    "closure",
    "element_orders",
    "pair_product_hist",
    "convolve_right",
    "coin_ways",
    "find_commutator",
    "backends",
]


def backends():
    """Name -> module for every importable backend (benchmark and parity tests)."""
    out = {"numpy": _numpy}
    if _numba is not None:
        out["numba"] = _numba
    return out


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def closure(table, gens, identity, stop_above=None):
    n = table.shape[0]
    stop = n if stop_above is None else int(stop_above)
    return _impl.closure(table, _i64(gens), int(identity), stop)


def element_orders(table, identity):
    return _impl.element_orders(table, int(identity))


def pair_product_hist(table, a, b):
    return _impl.pair_product_hist(table, _i64(a), _i64(b))


def convolve_right(table, counts, members):
    if counts.dtype == object:
        # arbitrary precision path: numba cannot carry Python ints
        return _numpy.convolve_right(table, counts, members)
    return _impl.convolve_right(table, counts, _i64(members))


def coin_ways(limit, coins):
    return _impl.coin_ways(int(limit), _i64(coins))


def find_commutator(table, inv, orders, k, xs):
    return _impl.find_commutator(table, inv, orders, int(k), _i64(xs))
