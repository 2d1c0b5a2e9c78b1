"""Matroids stored as complete rank tables.

A Matroid has an ordered tuple of string labels and an int8 array ``table``
of length 2**n with ``table[X]`` the rank of the subset encoded by mask X
(bit i is ``labels[i]``).  Everything else is derived from the table and
cached on first use.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import bits as B
from .errors import (AxiomViolation, CapExceeded, CyclicFlatMismatch, EmptyFamily,
                     GroundMismatch, LabelCollision, MatroidError)

DEFAULT_MAX_GROUND = 16

FAMILY_KINDS = ("independent", "bases", "circuits", "spanning", "flats",
                "cyclic_flats", "cyclic_sets", "loops", "isthmuses")


def max_ground() -> int:
    raw = os.environ.get("MATSPL_MAX_GROUND")
    if raw is None:
        return DEFAULT_MAX_GROUND
    try:
        return int(raw)
    except ValueError:
        raise MatroidError(f"MATSPL_MAX_GROUND is not an integer: {raw!r}")


def _as_labels(labels) -> tuple[str, ...]:
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise LabelCollision(f"duplicate labels in {labels}")
    if len(labels) > max_ground():
        raise CapExceeded(
            f"ground set of size {len(labels)} exceeds the cap {max_ground()}"
            " (set MATSPL_MAX_GROUND to raise it)")
    return labels


@dataclass(frozen=True)
class SubsetFamily:
    """A family of subsets of a fixed ground set, stored as masks."""
    labels: tuple
    kind: str
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, x):
        return x in self.members

    def as_sets(self) -> list[tuple[str, ...]]:
        return [tuple(self.labels[b] for b in B.bits(x)) for x in sorted(self.members)]


def _family(labels, kind, arr: np.ndarray) -> SubsetFamily:
    return SubsetFamily(labels, kind, frozenset(int(x) for x in np.flatnonzero(arr)))


def check_rank_table(labels, t: np.ndarray) -> None:
    """Raise AxiomViolation unless t is a matroid rank function.

    Normalization, unit increase and local submodularity
    r(X+e)+r(X+f) >= r(X+e+f)+r(X) together imply full submodularity.
    """
    n = len(labels)

    def named(*ms):
        return [tuple(labels[b] for b in B.bits(int(m))) for m in ms]

    if t.shape != (1 << n,):
        raise AxiomViolation(f"rank table must have length {1 << n}, got {t.shape}")
    if t[0] != 0:
        raise AxiomViolation("rank of the empty set is not zero", named(0))
    t16 = t.astype(np.int16)
    for e in range(n):
        lo, hi = B.halves(t16, e)
        d = hi - lo
        bad = np.flatnonzero((d < 0) | (d > 1))
        if bad.size:
            row, col = divmod(int(bad[0]), 1 << e)
            x = (row << (e + 1)) | col
            raise AxiomViolation("unit increase fails", named(x, x | (1 << e)))
    for f in range(1, n):
        for e in range(f):
            v = t16.reshape(-1, 2, 1 << (f - e - 1), 2, 1 << e)
            lhs = v[:, 1, :, 0, :] + v[:, 0, :, 1, :]
            rhs = v[:, 1, :, 1, :] + v[:, 0, :, 0, :]
            bad = np.argwhere(lhs < rhs)
            if bad.size:
                a, b, c = (int(z) for z in bad[0])
                x = (a << (f + 1)) | (b << (e + 1)) | c
                raise AxiomViolation("submodularity fails",
                                     named(x | (1 << e), x | (1 << f)))


def lift_array(arr: np.ndarray, sub_labels, labels) -> np.ndarray:
    """Array over subsets of ``labels`` whose value at X is arr[X & sub]."""
    sub_labels, labels = tuple(sub_labels), tuple(labels)
    pos = {x: i for i, x in enumerate(labels)}
    missing = [x for x in sub_labels if x not in pos]
    if missing:
        raise GroundMismatch(f"labels {missing} not in target ground set")
    n, N = len(sub_labels), len(labels)
    if n == 0:
        return np.full(1 << N, arr[0], dtype=arr.dtype)
    # nd axis k is bit n-1-k; sort axes by descending target bit
    perm = sorted(range(n), key=lambda k: -pos[sub_labels[n - 1 - k]])
    t = arr.reshape((2,) * n).transpose(perm)
    inside = set(sub_labels)
    shape = tuple(2 if labels[b] in inside else 1 for b in range(N - 1, -1, -1))
    t = t.reshape(shape)
    return np.ascontiguousarray(np.broadcast_to(t, (2,) * N)).reshape(-1)


def embed_masks(sub_labels, labels) -> np.ndarray:
    """For each mask Y over sub_labels, the same set as a mask over labels."""
    pos = {x: i for i, x in enumerate(labels)}
    out = np.zeros(1 << len(sub_labels), dtype=np.int64)
    for b, x in enumerate(sub_labels):
        out[1 << b: 2 << b] = out[: 1 << b] | (1 << pos[x])
    return out


class Matroid:
    """Immutable matroid given by its full rank table."""

    __slots__ = ("labels", "table", "_index", "_cache", "__weakref__")

    def __init__(self, labels, table, check: bool = True):
        labels = _as_labels(labels)
        t = np.asarray(table)
        if t.dtype != np.int8:
            if t.size and (t.min() < 0 or t.max() > 127):
                raise AxiomViolation("rank values out of range")
            t = t.astype(np.int8)
        if check:
            check_rank_table(labels, t)
        elif t.shape != (1 << len(labels),):
            raise AxiomViolation("rank table has wrong length")
        if t.flags.writeable:
            t = t.copy()
        t.setflags(write=False)
        self.labels = labels
        self.table = t
        self._index = {x: i for i, x in enumerate(labels)}
        self._cache = {}

    # basic data -------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def r(self) -> int:
        return int(self.table[-1])

    def mask(self, x) -> int:
        """Mask of a label, an iterable of labels, or an int (passed through)."""
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if x < 0 or x > self.full:
                raise MatroidError(f"mask {x} out of range")
            return x
        if isinstance(x, str):
            x = [x]
        m = 0
        for lab in x:
            try:
                m |= 1 << self._index[lab]
            except KeyError:
                raise MatroidError(f"unknown label {lab!r}") from None
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[b] for b in B.bits(int(mask)))

    def rank(self, x) -> int:
        return int(self.table[self.mask(x)])

    def ground_mask_in(self, other: "Matroid") -> int:
        """Mask, in ``other``'s positions, of this matroid's labels."""
        return other.mask(self.labels)

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, labels={''.join(self.labels) if all(len(x) == 1 for x in self.labels) else list(self.labels)})"

    # equality ---------------------------------------------------------
    def canonical(self) -> tuple:
        """Key that is equal exactly for equal matroids (same labels, same ranks)."""
        key = self._cache.get("canon")
        if key is None:
            order = tuple(sorted(self.labels))
            key = (order, self.reorder(order).table.tobytes())
            self._cache["canon"] = key
        return key

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        if self.labels == other.labels:
            return np.array_equal(self.table, other.table)
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    # ground-set manipulation -----------------------------------------
    def _nd(self) -> np.ndarray:
        return self.table.reshape((2,) * self.n) if self.n else self.table.reshape(())

    def extend_table(self, labels) -> np.ndarray:
        """Table of X -> r(X & ground) on a larger (or reordered) ground set."""
        return lift_array(self.table, self.labels, labels)

    def reorder(self, labels) -> "Matroid":
        labels = tuple(labels)
        if labels == self.labels:
            return self
        if set(labels) != set(self.labels) or len(labels) != self.n:
            raise GroundMismatch("reorder needs a permutation of the labels")
        return Matroid(labels, self.extend_table(labels), check=False)

    def relabel(self, mapping) -> "Matroid":
        if callable(mapping):
            new = [mapping(x) for x in self.labels]
        else:
            new = [mapping.get(x, x) for x in self.labels]
        return Matroid(new, self.table, check=False)

    def _select(self, X: int, fill: int) -> np.ndarray:
        n = self.n
        idx = tuple(slice(None) if (X >> (n - 1 - k)) & 1 else fill for k in range(n))
        return np.ascontiguousarray(self._nd()[idx]).reshape(-1)

    def restrict(self, X) -> "Matroid":
        """M|X."""
        X = self.mask(X)
        if X == self.full:
            return self
        return Matroid(self.names(X), self._select(X, 0), check=False)

    def contract_to(self, X) -> "Matroid":
        """M.X: contract everything outside X."""
        X = self.mask(X)
        if X == self.full:
            return self
        t = self._select(X, 1) - self.table[self.full & ~X]
        return Matroid(self.names(X), t, check=False)

    def delete(self, X) -> "Matroid":
        """M minus X."""
        return self.restrict(self.full & ~self.mask(X))

    def contract(self, X) -> "Matroid":
        """M/X, living on the complement of X."""
        return self.contract_to(self.full & ~self.mask(X))

    def dual(self) -> "Matroid":
        d = self._cache.get("dual")
        if d is None:
            t = B.popcounts(self.n) + self.table[::-1] - self.r
            d = Matroid(self.labels, t, check=False)
            d._cache["dual"] = self
            self._cache["dual"] = d
        return d

    # derived arrays ---------------------------------------------------
    def _arr(self, key):
        a = self._cache.get(key)
        if a is None:
            a = getattr(self, "_compute_" + key)()
            a.setflags(write=False)
            self._cache[key] = a
        return a

    def _compute_independent(self):
        return self.table == B.popcounts(self.n)

    def _compute_spanning(self):
        return self.table == self.r

    def _compute_bases(self):
        return self._arr("independent") & self._arr("spanning")

    def _compute_flats(self):
        ok = np.ones(1 << self.n, dtype=bool)
        for e in range(self.n):
            lo, hi = B.halves(self.table, e)
            olo, _ = B.halves(ok, e)
            olo &= hi > lo
        return ok

    def _compute_cyclic_sets(self):
        ok = np.ones(1 << self.n, dtype=bool)
        for e in range(self.n):
            lo, hi = B.halves(self.table, e)
            _, ohi = B.halves(ok, e)
            ohi &= hi == lo
        return ok

    def _compute_cyclic_flats(self):
        return self._arr("flats") & self._arr("cyclic_sets")

    def _compute_circuits(self):
        ind = self._arr("independent")
        ok = ~ind
        for e in range(self.n):
            lo, _ = B.halves(ind, e)
            _, ohi = B.halves(ok, e)
            ohi &= lo
        return ok

    def _compute_closure(self):
        n = self.n
        dt = np.int32 if n < 31 else np.int64
        cl = np.arange(1 << n, dtype=dt)
        for e in range(n):
            lo, hi = B.halves(self.table, e)
            clo, _ = B.halves(cl, e)
            clo |= (hi == lo).astype(dt) << e
        return cl

    def family_array(self, kind: str) -> np.ndarray:
        """Boolean membership array of a family over all 2**n masks."""
        if kind in ("loops", "isthmuses"):
            a = np.zeros(1 << self.n, dtype=bool)
            for b in B.bits(self.loops() if kind == "loops" else self.isthmuses()):
                a[1 << b] = True
            return a
        if kind not in FAMILY_KINDS:
            raise MatroidError(f"unknown family kind {kind!r}")
        return self._arr(kind)

    # derived sets -----------------------------------------------------
    def loops(self) -> int:
        m = 0
        for e in range(self.n):
            if self.table[1 << e] == 0:
                m |= 1 << e
        return m

    def isthmuses(self) -> int:
        m = 0
        for e in range(self.n):
            if self.table[self.full & ~(1 << e)] < self.r:
                m |= 1 << e
        return m

    def closure(self, X) -> int:
        X = self.mask(X)
        cl = self._cache.get("closure")
        if cl is not None:
            return int(cl[X])
        rx = self.table[X]
        out = X
        for e in range(self.n):
            if not X >> e & 1 and self.table[X | 1 << e] == rx:
                out |= 1 << e
        return out

    def closure_array(self) -> np.ndarray:
        return self._arr("closure")

    def members(self, kind: str) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.family_array(kind))]

    def flats(self) -> list[int]:
        return self.members("flats")

    def cyclic_flats(self) -> list[int]:
        z = self._cache.get("zlist")
        if z is None:
            z = self.members("cyclic_flats")
            self._cache["zlist"] = z
        return z

    def cyclic_flats_with_ranks(self) -> list[tuple[int, int]]:
        return [(z, int(self.table[z])) for z in self.cyclic_flats()]

    def bases(self) -> list[int]:
        return self.members("bases")

    def circuits(self) -> list[int]:
        return self.members("circuits")

    def is_independent(self, X) -> bool:
        X = self.mask(X)
        return int(self.table[X]) == B.popcount(X)

    def is_flat(self, X) -> bool:
        X = self.mask(X)
        return self.closure(X) == X


# constructors ---------------------------------------------------------

def from_rank_table(labels, table) -> Matroid:
    return Matroid(labels, np.asarray(table), check=True)


def _mask_of(labels, x) -> int:
    if isinstance(x, (int, np.integer)):
        return int(x)
    index = {lab: i for i, lab in enumerate(labels)}
    if isinstance(x, str):
        x = [x]
    m = 0
    for lab in x:
        if lab not in index:
            raise MatroidError(f"unknown label {lab!r}")
        m |= 1 << index[lab]
    return m


def from_bases(labels, bases) -> Matroid:
    labels = _as_labels(labels)
    n = len(labels)
    bs = sorted({_mask_of(labels, b) for b in bases})
    if not bs:
        raise EmptyFamily("no bases given")
    sizes = {B.popcount(b) for b in bs}
    if len(sizes) != 1:
        small = min(bs, key=B.popcount)
        large = max(bs, key=B.popcount)
        raise AxiomViolation("bases are not equicardinal",
                             [tuple(labels[e] for e in B.bits(x)) for x in (small, large)])
    ind = np.zeros(1 << n, dtype=bool)
    ind[bs] = True
    B.zeta_superset_or(ind, n)
    t = np.where(ind, B.popcounts(n), 0).astype(np.int8)
    B.zeta_subset_max(t, n)
    m = Matroid(labels, t, check=True)
    if m.bases() != bs:
        raise AxiomViolation("basis exchange fails",
                             [m.names(x) for x in sorted(set(m.bases()) ^ set(bs))[:2]])
    return m


def rank_from_cyclic_flats(n: int, pairs) -> np.ndarray:
    pc = B.popcounts(n)
    ms = B.masks(n)
    t = pc.astype(np.int16).copy()
    for z, rz in pairs:
        np.minimum(t, rz + pc[ms & ~z], out=t)
    return t.astype(np.int8)


def from_cyclic_flats(labels, flats_with_ranks) -> Matroid:
    labels = _as_labels(labels)
    n = len(labels)
    pairs = []
    seen = set()
    for z, rz in flats_with_ranks:
        z = _mask_of(labels, z)
        if z in seen:
            raise CyclicFlatMismatch("cyclic flat listed twice",
                                     [tuple(labels[b] for b in B.bits(z))])
        seen.add(z)
        pairs.append((z, int(rz)))
    t = rank_from_cyclic_flats(n, pairs)
    try:
        m = Matroid(labels, t, check=True)
    except CyclicFlatMismatch:
        raise
    except AxiomViolation as exc:
        raise CyclicFlatMismatch("induced rank is not a matroid: " + exc.axiom,
                                 exc.witness) from None
    got = dict(m.cyclic_flats_with_ranks())
    want = dict(pairs)
    if got != want:
        diff = sorted(set(got.items()) ^ set(want.items()))
        raise CyclicFlatMismatch("derived cyclic flats differ from input",
                                 [m.names(diff[0][0])])
    return m


def uniform(r: int, labels) -> Matroid:
    labels = _as_labels(labels)
    n = len(labels)
    if not 0 <= r <= n:
        raise MatroidError(f"uniform rank {r} out of range for {n} elements")
    return Matroid(labels, np.minimum(B.popcounts(n), r), check=False)


def free_matroid(labels) -> Matroid:
    """I(E): every element an isthmus."""
    labels = _as_labels(labels)
    return uniform(len(labels), labels)


def loop_matroid(labels) -> Matroid:
    """I*(E): every element a loop."""
    return uniform(0, labels)


def truncate(m: Matroid, k: int = 1) -> Matroid:
    return Matroid(m.labels, np.minimum(m.table, max(m.r - k, 0)), check=False)


def direct_sum(m: Matroid, p: Matroid) -> Matroid:
    common = set(m.labels) & set(p.labels)
    if common:
        raise LabelCollision(f"labels shared by both summands: {sorted(common)}")
    t = p.table.astype(np.int8)[:, None] + m.table[None, :]
    return Matroid(m.labels + p.labels, t.reshape(-1), check=False)


def restrict(m: Matroid, X) -> Matroid:
    return m.restrict(X)


def contract(m: Matroid, X) -> Matroid:
    """Contraction onto X: the minor on X obtained by contracting E-X."""
    return m.contract_to(X)


def dual(m: Matroid) -> Matroid:
    return m.dual()


def derive(m: Matroid, kind: str) -> SubsetFamily:
    return _family(m.labels, kind, m.family_array(kind))


def same_ground(m: Matroid, p: Matroid) -> Matroid:
    """p reordered to m's label order; GroundMismatch if the sets differ."""
    if set(m.labels) != set(p.labels):
        raise GroundMismatch(f"ground sets differ: {sorted(set(m.labels) ^ set(p.labels))}")
    return p.reorder(m.labels)


# isomorphism ----------------------------------------------------------

def _signatures(m: Matroid):
    zs = m.cyclic_flats_with_ranks()
    loops, isth = m.loops(), m.isthmuses()
    sig = []
    for e in range(m.n):
        inside = sorted((B.popcount(z), r) for z, r in zs if z >> e & 1)
        sig.append((loops >> e & 1, isth >> e & 1, tuple(inside)))
    return sig


def invariant(m: Matroid) -> tuple:
    key = m._cache.get("inv")
    if key is None:
        zs = m.cyclic_flats_with_ranks()
        key = (m.n, m.r, B.popcount(m.loops()), B.popcount(m.isthmuses()),
               tuple(sorted((B.popcount(z), r) for z, r in zs)),
               tuple(sorted(_signatures(m))))
        m._cache["inv"] = key
    return key


def is_isomorphic(m: Matroid, p: Matroid):
    """A label bijection m -> p preserving rank, or None."""
    if invariant(m) != invariant(p):
        return None
    n = m.n
    sm, sp = _signatures(m), _signatures(p)
    classes = {}
    for e in range(n):
        classes.setdefault(sm[e], []).append(e)
    order = sorted(range(n), key=lambda e: (len(classes[sm[e]]), e))
    cands = [[f for f in range(n) if sp[f] == sm[e]] for e in order]
    tm, tp = m.table, p.table
    image = [0] * n
    used = [False] * n

    def extend(k, subs_m, subs_p):
        if k == n:
            return True
        e = order[k]
        for f in cands[k]:
            if used[f]:
                continue
            new_m = subs_m | (1 << e)
            new_p = subs_p | (1 << f)
            if not np.array_equal(tm[new_m], tp[new_p]):
                continue
            used[f] = True
            image[e] = f
            if extend(k + 1, np.concatenate([subs_m, new_m]), np.concatenate([subs_p, new_p])):
                return True
            used[f] = False
        return False

    zero = np.zeros(1, dtype=np.int64)
    if not extend(0, zero, zero):
        return None
    return {m.labels[e]: p.labels[image[e]] for e in range(n)}


def iso_classes(ms: Iterable[Matroid]) -> list[Matroid]:
    """One representative per isomorphism class, first occurrence kept."""
    buckets: dict = {}
    reps = []
    for m in ms:
        bucket = buckets.setdefault(invariant(m), [])
        if any(is_isomorphic(m, q) is not None for q in bucket):
            continue
        bucket.append(m)
        reps.append(m)
    return reps
