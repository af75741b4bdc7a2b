"""Clique counting on small dense graphs stored as uint64 bitsets.

Two interchangeable backends count every clique (the empty one included) of
a graph given by its "forward" adjacency ``fwd[i]`` = neighbours ``j > i``:

* ``numba``: a compiled iterative depth-first search, one task per root
  vertex, spread over threads with ``prange``.
* ``numpy``: a level-by-level expansion of all cliques of size k into those
  of size k+1, vectorised over the frontier.

The backend is picked per call; ``NOK_DISABLE_NUMBA=1`` forces the numpy
path, and ``NOK_THREADS`` caps the numba thread count.
"""
from __future__ import annotations

import os
import warnings

import numpy as np

__all__ = ["forward_bitsets", "count_cliques", "available_backends", "default_backend"]

_ONE = np.uint64(1)


def forward_bitsets(adjacency) -> np.ndarray:
    """Pack a boolean adjacency matrix into forward bitsets, shape (n, W)."""
    a = np.asarray(adjacency, dtype=bool)
    n = a.shape[0]
    words = max(1, (n + 63) // 64)
    fwd = np.zeros((n, words), dtype=np.uint64)
    for i in range(n):
        for j in np.nonzero(a[i])[0]:
            if j > i:
                fwd[i, j >> 6] |= _ONE << np.uint64(j & 63)
    return fwd


# ---------------------------------------------------------------- numpy path

def _count_numpy(fwd: np.ndarray) -> int:
    n, words = fwd.shape
    total = 1 + n
    frontier = fwd.copy()          # candidate sets of the 1-cliques {i}
    while frontier.shape[0]:
        nxt = []
        for j in range(n):
            w, bit = j >> 6, np.uint64(j & 63)
            rows = ((frontier[:, w] >> bit) & _ONE).astype(bool)
            if rows.any():
                nxt.append(frontier[rows] & fwd[j])
        if not nxt:
            break
        frontier = np.concatenate(nxt)
        total += frontier.shape[0]
        frontier = frontier[frontier.any(axis=1)]
    return int(total)


# ---------------------------------------------------------------- numba path

try:
    import numba
    from numba import njit, prange
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

if numba is not None:

    @njit(cache=True)
    def _next_bit(row, start, n):
        j = start
        while j < n:
            w = j >> 6
            x = row[w] >> np.uint64(j & 63)
            if x == 0:
                j = (w + 1) << 6
                continue
            while (x & np.uint64(1)) == 0:
                x >>= np.uint64(1)
                j += 1
            return j
        return -1

    @njit(cache=True)
    def _from_root(fwd, root):
        n, words = fwd.shape
        cand = np.empty((n + 1, words), dtype=np.uint64)
        pos = np.empty(n + 1, dtype=np.int64)
        for w in range(words):
            cand[0, w] = fwd[root, w]
        pos[0] = root + 1
        depth = 0
        total = 1
        while depth >= 0:
            v = _next_bit(cand[depth], pos[depth], n)
            if v < 0:
                depth -= 1
                continue
            pos[depth] = v + 1
            total += 1
            d1 = depth + 1
            nonempty = False
            for w in range(words):
                x = cand[depth, w] & fwd[v, w]
                cand[d1, w] = x
                if x != 0:
                    nonempty = True
            if nonempty:
                pos[d1] = v + 1
                depth = d1
        return total

    @njit(parallel=True, cache=True)
    def _count_parallel(fwd):
        n = fwd.shape[0]
        per_root = np.zeros(n, dtype=np.int64)
        for r in prange(n):
            per_root[r] = _from_root(fwd, r)
        return per_root.sum() + 1


def _count_numba(fwd: np.ndarray) -> int:
    if numba is None:
        raise RuntimeError("numba is not installed")
    threads = os.environ.get("NOK_THREADS")
    with warnings.catch_warnings():
        # numba probes threading layers on first use and warns about old TBB
        warnings.simplefilter("ignore", category=numba.NumbaWarning)
        if threads:
            numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))
        return int(_count_parallel(np.ascontiguousarray(fwd)))


# ---------------------------------------------------------------- dispatch

def _numba_importable() -> bool:
    return numba is not None


def available_backends() -> list[str]:
    return (["numba"] if _numba_importable() else []) + ["numpy"]


def default_backend() -> str:
    if os.environ.get("NOK_DISABLE_NUMBA", "").strip() not in ("", "0"):
        return "numpy"
    return "numba" if _numba_importable() else "numpy"


def count_cliques(fwd: np.ndarray, backend: str | None = None) -> int:
    """Number of cliques, counting the empty clique and single vertices."""
    backend = backend or default_backend()
    if fwd.shape[0] == 0:
        return 1
    if backend == "numba":
        return _count_numba(fwd)
    if backend == "numpy":
        return _count_numpy(fwd)
    raise ValueError(f"unknown backend {backend!r}")
