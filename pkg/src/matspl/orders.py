"""Weak and strong order, modular pairs and flats, modular cuts, elementary
quotients and single-element extensions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bits as B
from .kernel import Matroid, same_ground


def weak_leq(n: Matroid, m: Matroid) -> bool:
    """N <= M in the weak order: r_N(X) <= r_M(X) for all X."""
    m = same_ground(n, m)
    return bool(np.all(n.table <= m.table))


def weak_leq_independent(n: Matroid, m: Matroid) -> bool:
    """Weak order by its definition: every independent set of N is independent in M."""
    m = same_ground(n, m)
    return not np.any(n.family_array("independent") & ~m.family_array("independent"))


def is_quotient(n: Matroid, m: Matroid) -> bool:
    """N is a quotient of M: every flat of N is a flat of M."""
    m = same_ground(n, m)
    return not np.any(n.family_array("flats") & ~m.family_array("flats"))


def is_quotient_by_rank(n: Matroid, m: Matroid) -> bool:
    """Same relation via r_N(Y)-r_N(X) <= r_M(Y)-r_M(X) for X subset of Y,
    i.e. r_M - r_N is monotone."""
    m = same_ground(n, m)
    d = m.table.astype(np.int16) - n.table
    for e in range(n.n):
        lo, hi = B.halves(d, e)
        if np.any(hi < lo):
            return False
    return True


def modular_pair(m: Matroid, X, Y) -> bool:
    X, Y = m.mask(X), m.mask(Y)
    t = m.table
    return int(t[X]) + int(t[Y]) == int(t[X | Y]) + int(t[X & Y])


def modular_flat(m: Matroid, F) -> bool:
    F = m.mask(F)
    if not m.is_flat(F):
        return False
    G = np.flatnonzero(m.family_array("flats"))
    t = m.table.astype(np.int16)
    return bool(np.all(t[F] + t[G] == t[G | F] + t[G & F]))


@dataclass(frozen=True)
class ModularCut:
    """An up-closed family of flats closed under intersecting modular pairs."""
    matroid: Matroid
    members: frozenset

    def contains_closure(self, X: int) -> bool:
        return self.matroid.closure(X) in self.members

    def member_array(self) -> np.ndarray:
        a = np.zeros(1 << self.matroid.n, dtype=bool)
        if self.members:
            a[sorted(self.members)] = True
        return a


class _FlatLattice:
    """Flats of m with covers and modular-pair meets, for cut searches."""

    def __init__(self, m: Matroid):
        self.m = m
        t = m.table
        flats = m.flats()
        flats.sort(key=lambda f: (-int(t[f]), f))
        self.flats = flats
        self.index = {f: i for i, f in enumerate(flats)}
        rank = [int(t[f]) for f in flats]
        self.rank = rank
        self.covers = [[j for j, g in enumerate(flats) if rank[j] == rank[i] + 1 and f & ~g == 0]
                       for i, f in enumerate(flats)]
        # meets[k]: incomparable modular pairs (i, j) of flats with meet flats[k]
        self.meets = [[] for _ in flats]
        for i, f in enumerate(flats):
            for j in range(i + 1, len(flats)):
                g = flats[j]
                if f & ~g == 0 or g & ~f == 0:
                    continue
                if rank[i] + rank[j] == int(t[f | g]) + int(t[f & g]):
                    self.meets[self.index[f & g]].append((i, j))

    def close(self, chosen) -> set[int]:
        """Indices of the smallest modular cut containing the given flat indices."""
        inside = set()
        stack = list(chosen)
        by_meet = {}
        for k, pairs in enumerate(self.meets):
            for i, j in pairs:
                by_meet.setdefault(i, []).append((j, k))
                by_meet.setdefault(j, []).append((i, k))
        up = [[] for _ in self.flats]
        for i, cs in enumerate(self.covers):
            for c in cs:
                up[i].append(c)
        while stack:
            i = stack.pop()
            if i in inside:
                continue
            inside.add(i)
            stack.extend(up[i])
            for j, k in by_meet.get(i, ()):
                if j in inside and k not in inside:
                    stack.append(k)
        return inside

    def all_cuts(self):
        """Every modular cut, as sets of flat indices, in a fixed order.

        Flats are decided in order of decreasing rank.  Bitsets over flat
        indices carry the flats already in, already out, and forced in by a
        modular pair inside the cut, so conflicts surface at once."""
        flats, nf = self.flats, len(self.flats)
        up = [0] * nf       # indices of flats containing flat k, k included
        down = [0] * nf     # indices of flats contained in flat k, k included
        for i, f in enumerate(flats):
            for j, g in enumerate(flats):
                if f & ~g == 0:
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        partners = [[] for _ in flats]   # (earlier index, meet index)
        for k, pairs in enumerate(self.meets):
            for i, j in pairs:
                partners[j].append((i, k))
        cover_mask = [sum(1 << c for c in cs) for cs in self.covers]
        out = []

        def go(k, inside, outside, forced):
            if k == nf:
                out.append(frozenset(i for i in range(nf) if inside >> i & 1))
                return
            bit = 1 << k
            if not forced & bit:
                if not down[k] & forced:
                    go(k + 1, inside, outside | bit, forced)
            if cover_mask[k] & outside:
                return
            f2 = forced
            for j, meet in partners[k]:
                if inside >> j & 1:
                    f2 |= up[meet]
            if f2 & outside:
                return
            go(k + 1, inside | bit, outside, f2)

        go(0, 0, 0, 0)
        return out


def modular_cuts(m: Matroid) -> list[ModularCut]:
    lat = _FlatLattice(m)
    return [ModularCut(m, frozenset(lat.flats[i] for i in cut)) for cut in lat.all_cuts()]


def is_modular_cut(m: Matroid, family) -> bool:
    fam = {m.mask(x) for x in family}
    flats = set(m.flats())
    if not fam <= flats:
        return False
    for f in fam:
        for g in flats:
            if f & ~g == 0 and g not in fam:
                return False
    for f in fam:
        for g in fam:
            if modular_pair(m, f, g) and (f & g) not in fam:
                return False
    return True


def generated_cut(m: Matroid, generators) -> ModularCut:
    lat = _FlatLattice(m)
    idx = [lat.index[m.closure(m.mask(g))] for g in generators]
    return ModularCut(m, frozenset(lat.flats[i] for i in lat.close(idx)))


def quotient_from_cut(cut: ModularCut) -> Matroid:
    m = cut.matroid
    drop = cut.member_array()[m.closure_array()]
    return Matroid(m.labels, m.table - drop, check=False)


def extension_from_cut(cut: ModularCut, label: str) -> Matroid:
    """Single-element extension by ``label`` placed last: r(X+e) = r(X) iff
    cl(X) is in the cut."""
    m = cut.matroid
    stay = cut.member_array()[m.closure_array()]
    t = np.concatenate([m.table, m.table + (~stay).astype(np.int8)])
    return Matroid(m.labels + (label,), t, check=False)


def elementary_quotients(m: Matroid) -> list[Matroid]:
    """All quotients of rank r(m)-1, ordered by rank table."""
    if m.r == 0:
        return []
    bottom = m.closure(0)
    found = {}
    for cut in modular_cuts(m):
        if not cut.members or bottom in cut.members:
            continue
        q = quotient_from_cut(cut)
        found.setdefault(q.table.tobytes(), q)
    return [found[k] for k in sorted(found)]


def all_quotients(m: Matroid, proper: bool = True) -> list[Matroid]:
    """All quotients of m, by iterating elementary quotients."""
    seen = {m.table.tobytes(): m}
    frontier = [m]
    while frontier:
        nxt = []
        for q in frontier:
            for p in elementary_quotients(q):
                key = p.table.tobytes()
                if key not in seen:
                    seen[key] = p
                    nxt.append(p)
        frontier = nxt
    if proper:
        del seen[m.table.tobytes()]
    return [seen[k] for k in sorted(seen)]


def all_lifts(m: Matroid, proper: bool = True) -> list[Matroid]:
    """All lifts of m: duals of the quotients of the dual."""
    return [q.dual() for q in all_quotients(m.dual(), proper)]


def single_element_extensions(m: Matroid, label: str) -> list[Matroid]:
    return [extension_from_cut(c, label) for c in modular_cuts(m)]
