import itertools
import os

import numpy as np
import pytest
from hypothesis import given, settings

from matspl.constructions import VAMOS_LABELS, vamos, whirl3_by_cyclic_flats, wheel_whirl
from matspl.errors import (AxiomViolation, CapExceeded, CyclicFlatMismatch, EmptyFamily,
                           GroundMismatch, LabelCollision)
from matspl.kernel import (Matroid, contract, derive, direct_sum, dual, free_matroid,
                           from_bases, from_cyclic_flats, from_rank_table, is_isomorphic,
                           iso_classes, loop_matroid, restrict, truncate, uniform)

from conftest import matroids


def brute_families(m):
    """Every family straight from its definition, one set at a time."""
    n, t, E = m.n, m.table, m.full
    size = lambda x: bin(x).count("1")
    out = {k: set() for k in ("independent", "spanning", "bases", "circuits", "flats",
                               "cyclic_sets", "cyclic_flats")}
    for X in range(1 << n):
        if t[X] == size(X):
            out["independent"].add(X)
        if t[X] == m.r:
            out["spanning"].add(X)
        if t[X] == size(X) == m.r:
            out["bases"].add(X)
        if t[X] < size(X) and all(t[X & ~(1 << e)] == size(X) - 1 for e in range(n) if X >> e & 1):
            out["circuits"].add(X)
        if all(t[X | 1 << e] > t[X] for e in range(n) if not X >> e & 1):
            out["flats"].add(X)
        if all(t[X & ~(1 << e)] == t[X] for e in range(n) if X >> e & 1):
            out["cyclic_sets"].add(X)
    out["cyclic_flats"] = out["flats"] & out["cyclic_sets"]
    return out


def submodular_everywhere(m):
    t = m.table
    return all(int(t[X]) + int(t[Y]) >= int(t[X | Y]) + int(t[X & Y])
               for X in range(1 << m.n) for Y in range(1 << m.n))


def test_zero_table_gives_all_loops():
    m = from_rank_table("ab", [0, 0, 0, 0])
    assert m.r == 0
    assert m.names(m.loops()) == ("a", "b")


def test_identity_table_gives_free_matroid():
    m = from_rank_table("abc", [bin(x).count("1") for x in range(8)])
    assert m == free_matroid("abc")


def test_nonzero_empty_rank_rejected():
    with pytest.raises(AxiomViolation) as exc:
        from_rank_table("ab", [1, 1, 1, 1])
    assert "empty" in exc.value.axiom


def test_unit_increase_and_submodularity_violations_have_witnesses():
    with pytest.raises(AxiomViolation) as exc:
        from_rank_table("ab", [0, 2, 1, 2])
    assert exc.value.witness
    with pytest.raises(AxiomViolation):
        from_rank_table("ab", [0, 1, 1, 0])


def test_from_bases_uniform_and_vamos():
    assert from_bases("abc", [("a", "b"), ("a", "c"), ("b", "c")]) == uniform(2, "abc")
    V = vamos()
    assert V.n == 8 and V.r == 4
    assert len(V.bases()) == 70 - 5


def test_from_bases_errors():
    with pytest.raises(AxiomViolation):
        from_bases("abcd", [("a", "b"), ("c", "d")])
    with pytest.raises(EmptyFamily):
        from_bases("ab", [])
    with pytest.raises(AxiomViolation):
        from_bases("abc", [("a", "b"), ("c",)])


def test_from_cyclic_flats_examples():
    assert from_cyclic_flats("abc", [((), 0)]) == free_matroid("abc")
    W = whirl3_by_cyclic_flats()
    assert W == wheel_whirl(3, whirl=True)
    got = {W.names(z): r for z, r in W.cyclic_flats_with_ranks()}
    assert got == {(): 0, ("e", "f", "g"): 2, ("c'", "d", "g"): 2, ("c", "d", "e"): 2,
                   W.labels: 3}


def test_illegal_cyclic_flat_system_is_rejected():
    with pytest.raises(CyclicFlatMismatch):
        from_cyclic_flats("abc", [((), 0), (("a", "b"), 1), (("a", "c"), 1), (("a", "b", "c"), 2)])
    # a mismatch is also an axiom violation
    assert issubclass(CyclicFlatMismatch, AxiomViolation)
    with pytest.raises(CyclicFlatMismatch):
        from_cyclic_flats("abc", [((), 0), ((), 0)])
    with pytest.raises(CyclicFlatMismatch):
        # {a,b} of rank 1 forces {a,b} to be the only proper cyclic flat; {c} listed wrongly
        from_cyclic_flats("abc", [((), 0), (("a", "b"), 1), (("a", "b", "c"), 2), (("c",), 1)])


def test_derive_examples():
    assert derive(uniform(2, "abc"), "cyclic_flats").as_sets() == [(), ("a", "b", "c")]
    V = vamos()
    zs = [z for z in derive(V, "cyclic_flats").as_sets() if 0 < len(z) < 8]
    pairs = {"a": ("a", "a'"), "b": ("b", "b'"), "c": ("c", "c'"), "d": ("d", "d'")}
    want = sorted(tuple(sorted(pairs[x] + pairs[y], key=VAMOS_LABELS.index))
                  for x, y in itertools.combinations("abcd", 2) if {x, y} != {"a", "d"})
    assert sorted(zs) == want
    assert len(zs) == 5
    assert derive(loop_matroid("abc"), "loops").as_sets() == [("a",), ("b",), ("c",)]
    assert free_matroid("ab").names(free_matroid("ab").isthmuses()) == ("a", "b")


def test_duals():
    assert dual(uniform(2, "abcd")) == uniform(2, "abcd")
    assert dual(free_matroid("abc")) == loop_matroid("abc")
    assert dual(dual(vamos())) == vamos()


def test_minors():
    assert restrict(uniform(2, "abc"), ["a", "b"]) == uniform(2, "ab")
    V = vamos()
    rest = [x for x in V.labels if x != "b'"]
    Vc = contract(V, rest)
    assert Vc.r == 3 and Vc == V.contract(["b'"])
    for X in range(256):
        Y = X | V.mask("b'")
        assert Vc.rank(V.names(X & ~V.mask("b'"))) == V.rank(Y) - V.rank("b'")
    assert restrict(V, V.labels) == V


def test_direct_sum():
    m = direct_sum(free_matroid("ab"), loop_matroid("cd"))
    assert m.names(m.isthmuses()) == ("a", "b") and m.names(m.loops()) == ("c", "d")
    trip = direct_sum(direct_sum(uniform(1, "ab"), uniform(1, "cd")), uniform(1, "ef"))
    assert trip.r == 3
    with pytest.raises(LabelCollision):
        direct_sum(uniform(1, "ab"), uniform(1, "bc"))


def test_isomorphism():
    u = uniform(2, "abc")
    assert is_isomorphic(u, u.relabel({"a": "x", "b": "y", "c": "z"})) is not None
    assert is_isomorphic(u, uniform(1, "abc")) is None
    V = vamos()
    W = V.relabel(lambda x: x.upper())
    bij = is_isomorphic(V, W)
    assert bij is not None
    for X in range(1 << V.n):
        assert V.rank(X) == W.rank([bij[x] for x in V.names(X)])


def test_nested_classes_on_four_elements():
    from matspl.corpus import matroid_classes
    from matspl.factor import is_nested
    assert sum(1 for m in matroid_classes(4) if is_nested(m)) == 16


def test_ground_cap(monkeypatch):
    monkeypatch.setenv("MATSPL_MAX_GROUND", "3")
    with pytest.raises(CapExceeded):
        uniform(1, "abcd")
    monkeypatch.delenv("MATSPL_MAX_GROUND")
    assert uniform(1, "abcd").n == 4


def test_reorder_and_grounds():
    m = uniform(1, "ab")
    with pytest.raises(GroundMismatch):
        m.reorder("ac")
    assert m.reorder("ba") == m


def test_truncate():
    assert truncate(free_matroid("abc")) == uniform(2, "abc")


def test_isomorphism_classes_are_distinct(corpus5):
    reps = iso_classes(m for m in corpus5 if m.n == 4)
    assert len(reps) == 17


@settings(max_examples=60, deadline=None)
@given(matroids(max_n=6))
def test_families_match_their_definitions(m):
    want = brute_families(m)
    for kind, members in want.items():
        assert set(m.members(kind)) == members, kind


@settings(max_examples=40, deadline=None)
@given(matroids(max_n=5))
def test_constructed_tables_are_submodular(m):
    assert submodular_everywhere(m)


@settings(max_examples=60, deadline=None)
@given(matroids(max_n=7))
def test_dual_bases_are_complements(m):
    d = m.dual()
    assert set(d.bases()) == {m.full & ~b for b in m.bases()}
    assert d.dual() == m


@settings(max_examples=60, deadline=None)
@given(matroids(max_n=7))
def test_cyclic_flats_round_trip(m):
    assert from_cyclic_flats(m.labels, m.cyclic_flats_with_ranks()) == m


@settings(max_examples=40, deadline=None)
@given(matroids(max_n=6))
def test_deletion_and_contraction_commute(m):
    for X in range(1 << m.n):
        rest = m.full & ~X
        for Y in (rest, rest & 0b0101010, rest & 0b1010101):
            a = m.delete(X).contract(m.names(Y))
            b = m.contract(Y).delete(m.names(X))
            assert a == b


@settings(max_examples=40, deadline=None)
@given(matroids(max_n=6))
def test_closure_array_matches_single_closures(m):
    cl = m.closure_array()
    fresh = Matroid(m.labels, m.table)
    for X in range(1 << m.n):
        assert fresh.closure(X) == int(cl[X])
        assert m.is_flat(int(cl[X]))
