"""Dense matrices over small prime fields and their column matroids."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MatroidError
from .kernel import Matroid

PRIMES = (2, 3, 5, 7)

# spans are tracked as boolean vectors over all p**k points of GF(p)^k
_SPAN_BUDGET = 1 << 24


def _inv(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


@dataclass(frozen=True, eq=False)
class GFMatrix:
    p: int
    entries: np.ndarray
    labels: tuple

    def __post_init__(self):
        if self.p not in PRIMES:
            raise MatroidError(f"field size {self.p} not supported; use one of {PRIMES}")
        a = np.asarray(self.entries, dtype=np.int64) % self.p
        if a.ndim == 1:
            a = a.reshape(-1, len(self.labels)) if len(self.labels) else a.reshape(0, 0)
        if a.ndim != 2 or a.shape[1] != len(self.labels):
            raise MatroidError(f"matrix shape {a.shape} does not match {len(self.labels)} labels")
        if len(set(self.labels)) != len(self.labels):
            raise MatroidError("column labels must be distinct")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def shape(self):
        return self.entries.shape

    def __eq__(self, other):
        return (isinstance(other, GFMatrix) and self.p == other.p and self.labels == other.labels
                and np.array_equal(self.entries, other.entries))

    def columns(self, labels) -> "GFMatrix":
        idx = [self.labels.index(x) for x in labels]
        return GFMatrix(self.p, self.entries[:, idx], tuple(labels))

    def to_json(self) -> dict:
        rows, cols = self.entries.shape
        return {"p": self.p, "shape": [rows, cols],
                "entries": [int(x) for x in self.entries.reshape(-1)],
                "labels": list(self.labels)}

    @classmethod
    def from_json(cls, doc: dict) -> "GFMatrix":
        rows, cols = doc["shape"]
        return cls(int(doc["p"]), np.array(doc["entries"], dtype=np.int64).reshape(rows, cols),
                   tuple(doc["labels"]))


def rref(a: np.ndarray, p: int):
    """Reduced row echelon form mod p and the pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * _inv(a[r, c], p) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def solve_mod_p(a: np.ndarray, b: np.ndarray, p: int):
    """Some x with a x = b (mod p), or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    aug = np.concatenate([a, b.reshape(a.shape[0], -1)], axis=1)
    red, piv = rref(aug, p)
    ncols = a.shape[1]
    if any(c >= ncols for c in piv):
        return None
    x = np.zeros((ncols, aug.shape[1] - ncols), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = red[i, ncols:]
    return x % p


def column_rank_table(a: np.ndarray, p: int) -> np.ndarray:
    """Rank over GF(p) of every set of columns."""
    red, piv = rref(a, p)
    k = len(piv)
    red = red[:k]
    n = red.shape[1]
    if k == 0:
        return np.zeros(1 << n, dtype=np.int8)
    if p ** k * (1 << n) <= _SPAN_BUDGET:
        return _rank_table_by_spans(red, p)
    return _rank_table_by_elimination(red, p)


def _rank_table_by_spans(a: np.ndarray, p: int) -> np.ndarray:
    k, n = a.shape
    size = p ** k
    weights = p ** np.arange(k, dtype=np.int64)
    pts = (np.arange(size)[:, None] // weights) % p   # point index -> coordinates
    spans = np.zeros((1 << n, size), dtype=bool)
    spans[0, 0] = True
    for e in range(n):
        v = a[:, e]
        # new[u] = OR over c of prev[u - c v]
        prev = spans[: 1 << e]
        new = prev.copy()
        for c in range(1, p):
            src = ((pts - c * v) % p) @ weights
            new |= prev[:, src]
        spans[1 << e: 1 << (e + 1)] = new
    counts = spans.sum(axis=1)
    return np.rint(np.log(counts) / np.log(p)).astype(np.int8)


def _rank_table_by_elimination(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[1]
    t = np.zeros(1 << n, dtype=np.int8)
    for x in range(1, 1 << n):
        cols = [b for b in range(n) if x >> b & 1]
        t[x] = rank_mod_p(a[:, cols], p)
    return t


def gf_matroid(m: GFMatrix) -> Matroid:
    return Matroid(m.labels, column_rank_table(m.entries, m.p), check=False)
