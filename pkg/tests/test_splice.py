import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings

from matspl.corpus import labeled_matroids, random_matroid, random_split
from matspl.errors import CapExceeded, CoverageGap, GpcPreconditionFailed, LabelCollision, NotMatched
from matspl.factor import is_free_separator
from matspl.kernel import (derive, direct_sum, free_matroid, from_bases, loop_matroid, uniform)
from matspl.orders import is_quotient, weak_leq
from matspl.splice import (enumerate_splices, extend_ist, extend_loo, free_product, free_splice,
                           free_splice_as_lift, gpc, intersection_decomposition, is_matched,
                           is_splice, matched_pair, naive_contraction, naive_contraction_predicted,
                           naive_restriction, naive_restriction_predicted, restriction_formula,
                           contraction_formula, splice_closure, splice_views, weak_order_covers)

from conftest import labels, matched_pairs

FAMILIES = ("independent", "spanning", "bases", "circuits", "flats", "cyclic_flats")


def example_pair():
    M = uniform(2, "abc")
    N = from_bases("bcde", [x for x in itertools.combinations("bcde", 2) if x != ("b", "c")])
    return M, N


def all_on(labs):
    return [m.relabel(dict(zip(m.labels, labs))) for m in labeled_matroids(len(labs))]


def small_pairs(max_n=4):
    """Every matched pair (M, N) with |A|B| <= max_n, over a few covers."""
    for n in range(1, max_n + 1):
        E = labels(n)
        for split in itertools.product(range(3), repeat=n):
            A = [x for x, c in zip(E, split) if c != 1]
            Bl = [x for x, c in zip(E, split) if c != 0]
            for M in all_on(A):
                for N in all_on(Bl):
                    if is_matched(M, N) is not None:
                        yield M, N


def test_is_matched_examples():
    assert is_matched(uniform(1, "ab"), uniform(2, "cd")) is not None
    M = uniform(2, "abc")
    assert is_matched(M, uniform(1, "bc")) is not None
    assert is_matched(M, free_matroid("bc")) is None
    with pytest.raises(NotMatched) as err:
        matched_pair(M, free_matroid("bc"))
    assert "[0, 1, 1, 1]" in str(err.value)


def test_example_free_splice():
    M, N = example_pair()
    L = free_splice(M, N)
    assert L.r == 3 and set(L.labels) == set("abcde")
    small = [L.names(c) for c in L.circuits() if bin(c).count("1") <= L.r]
    assert small == [("a", "b", "c")]
    assert len(enumerate_splices(M, N)) == 3
    assert all(weak_leq(S, L) for S in enumerate_splices(M, N))


def test_trivial_containments():
    N = uniform(2, "abcd")
    M = N.restrict(list("ab"))
    assert free_splice(M, N).reorder(N.labels) == N
    K = uniform(2, "abcd")
    assert free_splice(K, K.contract_to(list("ab"))) == K
    assert enumerate_splices(K, K.contract_to(list("ab"))) == [K]


def test_disjoint_is_free_product():
    M, N = uniform(1, "ab"), uniform(1, "cd")
    P = free_product(M, N)
    assert P == free_splice(M, N) and P.r == 2
    with pytest.raises(LabelCollision):
        free_product(M, uniform(1, "bc"))
    spl = enumerate_splices(M, N)
    lo = direct_sum(M, N)
    assert lo in spl and P in spl
    interval = [L for L in all_on(P.labels) if weak_leq(lo, L) and weak_leq(L, P)]
    assert sorted(x.table.tobytes() for x in interval) == sorted(x.table.tobytes() for x in spl)
    x = free_product(loop_matroid("a"), free_matroid("b"))
    assert x.r == 1


def test_extensions_nest():
    M, N = example_pair()
    M1, N0 = extend_ist(M, N), extend_loo(M, N)
    assert is_quotient(N0, M1)
    assert M1.restrict(list("abc")) == M and M1.isthmuses() & M1.mask(list("de")) == M1.mask(list("de"))


@settings(max_examples=150, deadline=None)
@given(matched_pairs(max_n=7))
def test_free_splice_has_the_right_minors(pair):
    M, N = pair
    L = free_splice(M, N)
    assert is_splice(L, M, N)
    assert L == free_splice_as_lift(M, N)
    assert is_quotient(extend_loo(M, N), extend_ist(M, N))


@settings(max_examples=150, deadline=None)
@given(matched_pairs(max_n=7))
def test_views_match(pair):
    M, N = pair
    L = free_splice(M, N)
    v = splice_views(M, N)
    for kind in FAMILIES:
        assert v[kind] == derive(L, kind), kind
    assert np.array_equal(v["closure"], L.closure_array())
    assert v["loops"] == L.loops() and v["isthmuses"] == L.isthmuses()


def test_enumeration_matches_brute_force():
    count = 0
    for M, N in small_pairs(4):
        E = free_splice(M, N).labels
        brute = sorted(L.table.tobytes() for L in all_on(E) if is_splice(L, M, N))
        got = enumerate_splices(M, N)
        assert sorted(L.table.tobytes() for L in got) == brute
        F = free_splice(M, N)
        assert all(weak_leq(L, F) for L in got)
        assert [L.table.tolist() for L in got] == sorted(L.table.tolist() for L in got)
        count += 1
    assert count > 1000


def test_enumeration_cap():
    M, N = uniform(2, labels(5)), uniform(2, [f"f{i}" for i in range(5)])
    with pytest.raises(CapExceeded):
        enumerate_splices(M, N, cap=8)


def test_covers_are_weak_order_covers():
    M, N = example_pair()
    spl = enumerate_splices(M, N)
    covers = weak_order_covers(spl)
    F = spl.index(free_splice(M, N))
    assert all(j == F for _, j in covers) and len(covers) == 2


def test_duality_exhaustive():
    for M, N in small_pairs(3):
        L = free_splice(M, N)
        assert L.dual() == free_splice(N.dual(), M.dual()).reorder(L.labels)


def test_filter_property():
    for M, N in small_pairs(3):
        F = free_splice(M, N)
        spl = enumerate_splices(M, N)
        M1, N0 = extend_ist(M, N), extend_loo(M, N)
        for P in all_on(F.labels):
            if P.r != F.r or not weak_leq(P, F) or not any(weak_leq(S, P) for S in spl):
                continue
            if is_quotient(N0, P) and is_quotient(P, M1):
                assert is_splice(P, M, N)


def test_order_preservation():
    E = labels(3)
    A, Bl = E[:2], E[1:]
    pairs = [(M, N) for M in all_on(A) for N in all_on(Bl) if is_matched(M, N)]
    for (M, N), (M2, N2) in itertools.product(pairs, repeat=2):
        if weak_leq(M, M2) and weak_leq(N, N2):
            assert weak_leq(free_splice(M, N), free_splice(M2, N2))
        if is_quotient(M, M2) and is_quotient(N, N2):
            assert is_quotient(free_splice(M, N), free_splice(M2, N2))


@settings(max_examples=60, deadline=None)
@given(matched_pairs(max_n=5))
def test_direct_sum_distributes(pair):
    M, N = pair
    P = random_matroid(random.Random(len(M.labels)), ["p0", "p1"])
    left = direct_sum(free_splice(M, N), P)
    right = free_splice(direct_sum(M, P), direct_sum(N, P))
    assert left == right.reorder(left.labels)


@settings(max_examples=100, deadline=None)
@given(matched_pairs(max_n=7))
def test_intersection_decomposition(pair):
    M, N = pair
    first, second = intersection_decomposition(M, N)
    L = free_splice(M, N)
    assert set(L.bases()) == set(first.bases()) & set(second.bases())


def test_intersection_decomposition_disjoint():
    M, N = uniform(1, "ab"), uniform(2, "cde")
    a, b = intersection_decomposition(M, N)
    assert a == b == free_product(M, N)


@settings(max_examples=100, deadline=None)
@given(matched_pairs(max_n=6))
def test_minor_formulas(pair):
    M, N = pair
    L = free_splice(M, N)
    rng = random.Random(L.n)
    for _ in range(4):
        X = [x for x in L.labels if rng.random() < 0.6]
        assert restriction_formula(M, N, X) == L.restrict(X)
        assert contraction_formula(M, N, X) == L.contract_to(X)
        nr = naive_restriction(M, N, X)
        assert naive_restriction_predicted(M, N, X) == (nr is not None and nr == L.restrict(X))
        nc = naive_contraction(M, N, X)
        assert naive_contraction_predicted(M, N, X) == (nc is not None and nc == L.contract_to(X))


def test_minor_special_cases_exhaustive():
    for M, N in small_pairs(3):
        L = free_splice(M, N)
        p = matched_pair(M, N)
        S = set(p.names(p.S))
        for k in range(L.n + 1):
            for X in itertools.combinations(L.labels, k):
                if S <= set(X):
                    assert naive_restriction(M, N, X) == L.restrict(X)


@settings(max_examples=80, deadline=None)
@given(matched_pairs(max_n=6))
def test_splice_closure(pair):
    M, N = pair
    L = free_splice(M, N)
    rng = random.Random(L.n + 7)
    K = random_matroid(rng, L.labels)
    A, Bl = random_split(rng, L.labels)
    phi = splice_closure(K, A, Bl)
    assert weak_leq(K, phi)
    assert splice_closure(phi, A, Bl) == phi
    assert (splice_closure(K, A, Bl) == K) == is_free_separator(K, A, Bl)
    assert splice_closure(K, K.labels, Bl) == K
    with pytest.raises(CoverageGap):
        splice_closure(K, [], [])


def test_splice_closure_monotone():
    E = labels(3)
    A, Bl = E[:2], E[1:]
    ms = all_on(E)
    for K, K2 in itertools.product(ms, repeat=2):
        if weak_leq(K, K2):
            assert weak_leq(splice_closure(K, A, Bl), splice_closure(K2, A, Bl))


def test_gpc_basics():
    M, N = uniform(2, "abc"), uniform(1, "de")
    assert gpc(M, N) == direct_sum(M, N)
    from matspl.constructions import complete_graph
    K = complete_graph(4)
    K2 = K.relabel({x: (x if x == K.labels[0] else x + "'") for x in K.labels})
    P = gpc(K, K2)
    assert P.restrict(K.labels) == K and P.restrict(K2.labels) == K2.reorder(P.restrict(K2.labels).labels)
    assert P.r == 5
    for F in P.flats():
        assert K.is_flat(K.mask([x for x in P.names(F) if x in K._index]))


def test_gpc_preconditions():
    M = uniform(2, "abcd")
    N = uniform(2, "abxy")
    with pytest.raises(GpcPreconditionFailed):
        gpc(M, N)
    with pytest.raises(GpcPreconditionFailed):
        gpc(uniform(1, "ab"), uniform(2, "ab"))
