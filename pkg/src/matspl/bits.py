"""Bitmask helpers shared by every module.

A subset of an n-element ground set is an int in [0, 2**n).  Arrays indexed
by subsets have length 2**n.  Splitting such an array on bit e is done with a
reshape view: ``a.reshape(-1, 2, 1 << e)[:, 0, :]`` holds the entries for the
sets without e and ``[:, 1, :]`` the matching sets with e.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


def bits(mask: int) -> list[int]:
    out = []
    b = 0
    while mask:
        if mask & 1:
            out.append(b)
        mask >>= 1
        b += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(x: int, y: int) -> bool:
    return x & ~y == 0


def submasks(mask: int):
    """All submasks of ``mask`` in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@lru_cache(maxsize=32)
def _popcounts(n: int) -> np.ndarray:
    a = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int8)
    a.setflags(write=False)
    return a


def popcounts(n: int) -> np.ndarray:
    """|X| for every X, as int8."""
    if n <= 20:
        return _popcounts(n)
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int8)


def masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def halves(a: np.ndarray, e: int):
    """(values on sets without e, values on sets with e), as views."""
    v = a.reshape(-1, 2, 1 << e)
    return v[:, 0, :], v[:, 1, :]


def zeta_subset_max(a: np.ndarray, n: int) -> np.ndarray:
    """In place: a[X] <- max over Y subset of X of a[Y]."""
    for e in range(n):
        lo, hi = halves(a, e)
        np.maximum(hi, lo, out=hi)
    return a


def zeta_subset_or(a: np.ndarray, n: int) -> np.ndarray:
    for e in range(n):
        lo, hi = halves(a, e)
        np.logical_or(hi, lo, out=hi)
    return a


def zeta_superset_or(a: np.ndarray, n: int) -> np.ndarray:
    for e in range(n):
        lo, hi = halves(a, e)
        np.logical_or(lo, hi, out=lo)
    return a


def zeta_superset_and(a: np.ndarray, n: int) -> np.ndarray:
    """In place: a[X] <- AND over Y superset of X of a[Y] (works for bool
    and for integer bitmasks)."""
    for e in range(n):
        lo, hi = halves(a, e)
        np.bitwise_and(lo, hi, out=lo)
    return a


def zeta_superset_min(a: np.ndarray, n: int) -> np.ndarray:
    for e in range(n):
        lo, hi = halves(a, e)
        np.minimum(lo, hi, out=lo)
    return a


def zeta_subset_sum(a: np.ndarray, n: int) -> np.ndarray:
    for e in range(n):
        lo, hi = halves(a, e)
        hi += lo
    return a
