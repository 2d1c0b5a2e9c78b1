import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from matspl.constructions import fano
from matspl.corpus import labeled_matroids
from matspl.errors import GroundMismatch
from matspl.kernel import Matroid, free_matroid, uniform
from matspl.orders import (all_lifts, all_quotients, elementary_quotients, generated_cut,
                           is_modular_cut, is_quotient, is_quotient_by_rank, modular_cuts,
                           modular_flat, modular_pair, quotient_from_cut, weak_leq,
                           weak_leq_independent)

from conftest import matroids


def test_weak_order_examples():
    u = uniform(2, "abc")
    assert weak_leq(u, u)
    assert weak_leq(uniform(1, "abc"), u)
    assert not weak_leq(u, uniform(1, "abc"))
    with pytest.raises(GroundMismatch):
        weak_leq(u, uniform(1, "abd"))


def test_quotient_examples():
    u = uniform(2, "abc")
    assert is_quotient(u, u)
    assert is_quotient(uniform(1, "abc"), u)
    # parallel pair plus loop is a weak-order-smaller matroid that is not a quotient of U(1,2)+loop
    m = Matroid("abc", [0, 1, 1, 1, 0, 1, 1, 1])
    n = Matroid("abc", [0, 0, 1, 1, 1, 1, 1, 1])
    assert weak_leq(n, uniform(1, "abc")) and weak_leq(m, uniform(1, "abc"))
    assert not is_quotient(n, m)


def test_modular_pair_examples():
    u = uniform(2, "abcd")
    assert modular_pair(u, u.mask(["a"]), u.mask(["a", "b"]))
    assert not modular_pair(u, u.mask(["a", "b"]), u.mask(["c", "d"]))
    f = free_matroid("abcd")
    assert all(modular_pair(f, x, y) for x in range(16) for y in range(16))


def test_modular_flat_examples():
    u = uniform(3, "abcd")
    assert modular_flat(u, u.full)
    assert not modular_flat(u, u.mask(["a", "b"]))
    F = fano()
    for p in F.labels:
        assert modular_flat(F, F.mask(p))
    lines = [z for z, r in F.cyclic_flats_with_ranks() if r == 2]
    assert all(modular_flat(F, z) for z in lines)


def test_elementary_quotients_of_free_pair():
    qs = elementary_quotients(free_matroid("ab"))
    tables = sorted(q.table.tolist() for q in qs)
    assert tables == sorted([[0, 1, 1, 1], [0, 0, 1, 1], [0, 1, 0, 1]])
    assert [q.table.tolist() for q in elementary_quotients(uniform(1, "a"))] == [[0, 0]]


def brute_quotients(m):
    """Every matroid on m's labels with rank r(m)-1 that is a quotient of m."""
    out = []
    for q in labeled_matroids(m.n):
        q = q.relabel(dict(zip(q.labels, m.labels)))
        if q.r == m.r - 1 and is_quotient(q, m):
            out.append(q.table.tolist())
    return sorted(out)


def test_elementary_quotients_match_brute_force(corpus5):
    for m in corpus5:
        if m.n > 4 or m.r == 0:
            continue
        got = sorted(q.table.tolist() for q in elementary_quotients(m))
        assert got == brute_quotients(m)


def test_modular_cuts_match_brute_force(corpus5):
    for m in corpus5:
        flats = m.flats()
        if len(flats) > 12:
            continue
        brute = {frozenset(c) for k in range(len(flats) + 1)
                 for c in itertools.combinations(flats, k) if is_modular_cut(m, c)}
        assert {c.members for c in modular_cuts(m)} == brute


def test_generated_cut_is_smallest():
    F = fano()
    p, q = F.mask(F.labels[0]), F.mask(F.labels[1])
    cut = generated_cut(F, [F.labels[0]])
    assert p in cut.members and q not in cut.members
    assert is_modular_cut(F, cut.members)
    both = generated_cut(F, [F.labels[0], F.labels[1]])
    assert 0 in both.members   # two points form a modular pair meeting in the empty flat


def test_every_quotient_output_is_a_quotient():
    F = fano()
    qs = all_quotients(F)
    assert all(is_quotient(q, F) for q in qs)
    ls = all_lifts(F)
    assert all(is_quotient(F, l) for l in ls)
    assert len({q.table.tobytes() for q in qs}) == len(qs)


@settings(max_examples=60, deadline=None)
@given(matroids(max_n=6), matroids(max_n=6))
def test_quotient_definitions_agree(m, n):
    if m.labels != n.labels:
        return
    assert is_quotient(n, m) == is_quotient_by_rank(n, m)
    assert weak_leq(n, m) == weak_leq_independent(n, m)


def test_order_facts_exhaustive(corpus5):
    by_n = {}
    for m in corpus5:
        if m.n <= 3:
            by_n.setdefault(m.n, []).append(m)
    for ms in by_n.values():
        for m, n in itertools.product(ms, repeat=2):
            q = is_quotient(n, m)
            if q:
                assert weak_leq(n, m)
            assert q == is_quotient(m.dual(), n.dual())


@settings(max_examples=40, deadline=None)
@given(matroids(max_n=5))
def test_quotients_from_cuts_are_elementary(m):
    for cut in modular_cuts(m):
        if not cut.members or 0 in cut.members:
            continue
        q = quotient_from_cut(cut)
        assert q.r == m.r - 1 and is_quotient(q, m)
