"""Kernel backend selection.

The compiled extension is used when it was built; setting the environment
variable ``MVBOOL_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

import numpy as np

from . import _fallback

BACKENDS = {"python": _fallback}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("MVBOOL_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]


def _prep(cur, img, defined):
    cur = np.ascontiguousarray(cur, dtype=np.int64)
    img = np.ascontiguousarray(img, dtype=np.int64)
    if defined is None:
        defined = np.ones(cur.shape[0], dtype=np.uint8)
    else:
        defined = np.ascontiguousarray(defined, dtype=np.uint8)
    return cur, img, defined


def async_successors(cur, img, weights, defined=None, backend=None):
    impl = BACKENDS[backend] if backend else _impl
    cur, img, defined = _prep(cur, img, defined)
    return impl.async_successors(cur, img, np.ascontiguousarray(weights, dtype=np.int64), defined)


def terminal_sccs(indptr, indices, defined=None, backend=None):
    impl = BACKENDS[backend] if backend else _impl
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    if defined is None:
        defined = np.ones(len(indptr) - 1, dtype=np.uint8)
    defined = np.ascontiguousarray(defined, dtype=np.uint8)
    return impl.terminal_sccs(indptr, indices, defined)


def local_edges(cur, img, weights, levels, defined=None, states=None, backend=None):
    impl = BACKENDS[backend] if backend else _impl
    cur, img, defined = _prep(cur, img, defined)
    if states is None:
        states = np.flatnonzero(defined)
    states = np.unique(np.asarray(states, dtype=np.int64))
    return impl.local_edges(
        cur,
        img,
        np.ascontiguousarray(weights, dtype=np.int64),
        np.ascontiguousarray(levels, dtype=np.int64),
        defined,
        states,
    )
