"""Exhaustive and random matroid generators used by tests and the verify suites."""
from __future__ import annotations

import random
import string
from functools import lru_cache

import numpy as np

from .gf import GFMatrix, gf_matroid
from .kernel import Matroid, iso_classes
from .orders import (_FlatLattice, ModularCut, extension_from_cut,
                     single_element_extensions)

LETTERS = string.ascii_lowercase


def empty_matroid() -> Matroid:
    return Matroid((), np.zeros(1, dtype=np.int8), check=False)


@lru_cache(maxsize=None)
def matroid_classes(n: int) -> tuple[Matroid, ...]:
    """One matroid per isomorphism class on the labels a, b, ... (n letters)."""
    if n == 0:
        return (empty_matroid(),)
    exts = []
    for m in matroid_classes(n - 1):
        exts.extend(single_element_extensions(m, LETTERS[n - 1]))
    return tuple(iso_classes(exts))


@lru_cache(maxsize=None)
def labeled_matroids(n: int) -> tuple[Matroid, ...]:
    """Every matroid on the labels a, b, ... (n letters), ordered by table."""
    if n == 0:
        return (empty_matroid(),)
    found = {}
    for m in labeled_matroids(n - 1):
        for x in single_element_extensions(m, LETTERS[n - 1]):
            found.setdefault(x.table.tobytes(), x)
    return tuple(found[k] for k in sorted(found))


def corpus(max_n: int) -> list[Matroid]:
    out = []
    for n in range(max_n + 1):
        out.extend(matroid_classes(n))
    return out


# random generation ----------------------------------------------------

def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_gf_matroid(seed, labels, rank: int | None = None, p: int = 2) -> Matroid:
    rng = _rng(seed)
    labels = tuple(labels)
    if rank is None:
        rank = rng.randint(0, len(labels))
    a = np.array([[rng.randrange(p) for _ in labels] for _ in range(rank)], dtype=np.int64)
    return gf_matroid(GFMatrix(p, a.reshape(rank, len(labels)), labels))


def random_transversal(seed, labels, k: int | None = None) -> Matroid:
    from .constructions import transversal
    rng = _rng(seed)
    labels = tuple(labels)
    if k is None:
        k = rng.randint(1, max(1, len(labels)))
    sets = [[x for x in labels if rng.random() < 0.5] for _ in range(k)]
    return transversal(labels, sets)


def random_cut(seed, m: Matroid) -> ModularCut:
    """Modular cut generated by a few random flats (possibly none)."""
    rng = _rng(seed)
    lat = _FlatLattice(m)
    g = rng.choice((0, 1, 1, 1, 2, 2, 3))
    chosen = rng.sample(range(len(lat.flats)), min(g, len(lat.flats)))
    return ModularCut(m, frozenset(lat.flats[i] for i in lat.close(chosen)))


def random_extension_matroid(seed, labels) -> Matroid:
    """Grow a matroid one random single-element extension at a time."""
    rng = _rng(seed)
    m = empty_matroid()
    for lab in labels:
        m = extension_from_cut(random_cut(rng, m), lab)
    return m


def random_matroid(seed, labels) -> Matroid:
    rng = _rng(seed)
    labels = list(labels)
    n = len(labels)
    kind = rng.randrange(6)
    if kind == 0:
        m = random_gf_matroid(rng, labels, rng.randint(0, n), rng.choice((2, 3)))
    elif kind == 1:
        m = random_transversal(rng, labels)
    else:
        m = random_extension_matroid(rng, rng.sample(labels, n))
        m = m.reorder(labels)
    if rng.random() < 0.3:
        m = m.dual()
    return m


def random_quotient_pair(seed, labels, extra: int | None = None):
    """(M, N) with N a quotient of M: delete and contract a hidden set."""
    rng = _rng(seed)
    labels = list(labels)
    if extra is None:
        extra = rng.randint(0, 2)
    hidden = [f"_z{i}" for i in range(extra)]
    k = random_matroid(rng, labels + hidden)
    z = k.mask(hidden)
    return k.delete(z), k.contract(z)


def random_split(seed, labels):
    """Random (A, B) label lists with A | B = labels."""
    rng = _rng(seed)
    A, Bs = [], []
    for x in labels:
        c = rng.randrange(3)
        if c == 0:
            A.append(x)
        elif c == 1:
            Bs.append(x)
        else:
            A.append(x)
            Bs.append(x)
    return A, Bs


def random_matched_pair(seed, labels):
    """(M, N) = (L|A, L.B) for a random L and random cover (A, B)."""
    rng = _rng(seed)
    L = random_matroid(rng, labels)
    A, Bs = random_split(rng, labels)
    return L.restrict(A), L.contract_to(Bs)

