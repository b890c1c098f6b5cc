"""Hot order-theoretic inner loops, in two interchangeable backends.

The numba backend compiles the plain nested loops; the numpy backend
vectorizes row-by-row using the counting identity |down(c)| == |down(a)
cap down(b)| for the meet candidate c.  Both compute identical tables.

Backend selection: numba is the default whenever it imports; set
``STONESPEC_DISABLE_NUMBA=1`` to force the numpy path.  Every dispatcher
also takes an explicit ``backend=`` argument so the benchmark can time
both in one process.
"""

from __future__ import annotations

import os

import numpy as np


def _flag_disabled() -> bool:
    return os.environ.get("STONESPEC_DISABLE_NUMBA", "0").strip().lower() in (
        "1",
        "true",
        "yes",
    )


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(f):
            return f

        return wrap


DEFAULT_BACKEND = "numba" if (HAVE_NUMBA and not _flag_disabled()) else "numpy"


def active_backend() -> str:
    return DEFAULT_BACKEND


def _resolve(backend: str | None) -> str:
    b = DEFAULT_BACKEND if backend is None else backend
    if b not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {b!r}")
    if b == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return b


# ---------------------------------------------------------------------------
# meet/join tables

STATUS_OK = 0
STATUS_NO_MEET = 1
STATUS_NO_JOIN = 2


@njit(cache=True)
def _bound_tables_nb(leq):  # pragma: no cover - exercised via dispatcher
    n = leq.shape[0]
    meet = np.full((n, n), -1, np.int64)
    join = np.full((n, n), -1, np.int64)
    for a in range(n):
        for b in range(a + 1):
            best = -1
            for c in range(n):
                if leq[c, a] and leq[c, b] and (best < 0 or leq[best, c]):
                    best = c
            if best < 0:
                return meet, join, STATUS_NO_MEET, a, b
            for c in range(n):
                if leq[c, a] and leq[c, b] and not leq[c, best]:
                    return meet, join, STATUS_NO_MEET, a, b
            meet[a, b] = best
            meet[b, a] = best
            best = -1
            for c in range(n):
                if leq[a, c] and leq[b, c] and (best < 0 or leq[c, best]):
                    best = c
            if best < 0:
                return meet, join, STATUS_NO_JOIN, a, b
            for c in range(n):
                if leq[a, c] and leq[b, c] and not leq[best, c]:
                    return meet, join, STATUS_NO_JOIN, a, b
            join[a, b] = best
            join[b, a] = best
    return meet, join, STATUS_OK, -1, -1


def _bound_tables_np(leq):
    n = leq.shape[0]
    li = leq.astype(np.int64)
    down = li.sum(axis=0)  # |{c : c <= j}| per column j
    up = li.sum(axis=1)
    common_low = li.T @ li  # [a, b] -> number of common lower bounds
    common_up = li @ li.T
    meet = np.full((n, n), -1, np.int64)
    join = np.full((n, n), -1, np.int64)
    for a in range(n):
        lower = leq[:, a][:, None] & leq  # [c, b]: c <= a and c <= b
        hits = lower & (down[:, None] == common_low[a][None, :])
        cnt = hits.sum(axis=0)
        bad = np.flatnonzero(cnt != 1)
        if bad.size:
            return meet, join, STATUS_NO_MEET, a, int(bad[0])
        meet[a] = hits.argmax(axis=0)
        upper = leq[a][:, None] & leq.T  # [c, b]: a <= c and b <= c
        hits = upper & (up[:, None] == common_up[a][None, :])
        cnt = hits.sum(axis=0)
        bad = np.flatnonzero(cnt != 1)
        if bad.size:
            return meet, join, STATUS_NO_JOIN, a, int(bad[0])
        join[a] = hits.argmax(axis=0)
    return meet, join, STATUS_OK, -1, -1


def bound_tables(leq: np.ndarray, backend: str | None = None):
    """All-pairs greatest lower / least upper bounds.

    Returns (meet, join, status, a, b); status != STATUS_OK flags the first
    pair (a, b) without a unique bound.
    """
    leq = np.ascontiguousarray(leq, dtype=bool)
    if _resolve(backend) == "numba":
        return _bound_tables_nb(leq)
    return _bound_tables_np(leq)


# ---------------------------------------------------------------------------
# exhaustive law checks


@njit(cache=True)
def _distributivity_witness_nb(meet, join):  # pragma: no cover
    n = meet.shape[0]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                    return a, b, c
    return -1, -1, -1


def _distributivity_witness_np(meet, join):
    n = meet.shape[0]
    for a in range(n):
        lhs = meet[a][join]  # [b, c] -> a ^ (b v c)
        rhs = join[meet[a][:, None], meet[a][None, :]]
        bad = lhs != rhs
        if bad.any():
            b, c = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return a, int(b), int(c)
    return -1, -1, -1


def distributivity_witness(meet, join, backend: str | None = None):
    """First triple violating a ^ (b v c) == (a ^ b) v (a ^ c), else (-1,)*3."""
    if _resolve(backend) == "numba":
        return _distributivity_witness_nb(meet, join)
    return _distributivity_witness_np(meet, join)


@njit(cache=True)
def _orthomodularity_witness_nb(leq, meet, join, ortho):  # pragma: no cover
    n = leq.shape[0]
    for a in range(n):
        for b in range(n):
            if leq[a, b] and join[a, meet[b, ortho[a]]] != b:
                return a, b
    return -1, -1


def _orthomodularity_witness_np(leq, meet, join, ortho):
    n = leq.shape[0]
    # rel[a, b] = a v (b ^ a')
    c = meet[:, ortho]  # [b, a] -> b ^ a'
    rel = np.take_along_axis(join, c.T, axis=1)
    bad = leq & (rel != np.arange(n)[None, :])
    if bad.any():
        a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return int(a), int(b)
    return -1, -1


def orthomodularity_witness(leq, meet, join, ortho, backend: str | None = None):
    """First pair a <= b with b != a v (b ^ a'), else (-1, -1)."""
    if _resolve(backend) == "numba":
        return _orthomodularity_witness_nb(leq, meet, join, np.asarray(ortho, np.int64))
    return _orthomodularity_witness_np(leq, meet, join, np.asarray(ortho, np.int64))
