"""Randomized and exhaustive property suites, shared by the CLI and tests.

Every suite takes (n, seed, count) and returns a Tally: per property, how
many instances were checked and how many failed, plus a status for
sub-suites that were skipped because a cap applies.
"""
from __future__ import annotations

import random

import numpy as np

from .errors import CapExceeded, NotMatched
from .kernel import check_rank_table, derive, is_isomorphic

FAMILIES = ("independent", "spanning", "bases", "circuits", "flats", "cyclic_flats")
LABELED_COUNTS = (1, 2, 5, 16, 68, 406)
CLASS_COUNTS = (1, 2, 4, 8, 17, 38, 98)
SUITES = ("axioms", "higgs", "splice", "factor", "algebra", "constructions")


class Tally:
    def __init__(self, suite: str):
        self.suite = suite
        self.props: dict = {}
        self.examples: dict = {}

    def check(self, prop: str, ok: bool, example=None) -> None:
        entry = self.props.setdefault(prop, {"checked": 0, "failed": 0})
        entry["checked"] += 1
        if not ok:
            entry["failed"] += 1
            if example is not None and prop not in self.examples:
                self.examples[prop] = example

    def status(self, prop: str, status: str, detail: str = "") -> None:
        self.props[prop] = {"status": status, "detail": detail}

    @property
    def passed(self) -> bool:
        return all(p.get("failed", 0) == 0 for p in self.props.values())

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "properties": {k: self.props[k] for k in sorted(self.props)},
                "failures": {k: self.examples[k] for k in sorted(self.examples)}}


def _labels(n: int) -> list[str]:
    return [f"e{i}" for i in range(n)]


def _size(rng, n: int) -> list[str]:
    return _labels(rng.randint(1, max(1, n)))


def _random_subset(rng, m):
    return [x for x in m.labels if rng.random() < 0.5]


def _tables(*ms) -> list:
    return [[int(v) for v in m.table] for m in ms]


def suite_axioms(n: int, seed: int, count: int) -> Tally:
    from .corpus import labeled_matroids, matroid_classes, random_matroid
    from .errors import AxiomViolation
    tally = Tally("axioms")
    rng = random.Random(seed)
    for _ in range(count):
        m = random_matroid(rng, _size(rng, n))
        try:
            check_rank_table(m.labels, m.table)
            tally.check("random tables satisfy the axioms", True)
        except AxiomViolation as exc:
            tally.check("random tables satisfy the axioms", False, str(exc))
        tally.check("double dual is the identity", m.dual().dual() == m)
        X = _random_subset(rng, m)
        tally.check("deletion and contraction are dual",
                    m.delete(X).dual() == m.dual().contract(X))
        t = m.table.copy()
        S = rng.randrange(1, 1 << m.n)
        t[S] = bin(S).count("1") + 1
        try:
            check_rank_table(m.labels, t)
            tally.check("corrupted tables are rejected", False)
        except AxiomViolation:
            tally.check("corrupted tables are rejected", True)
        iso = m.relabel(dict(zip(m.labels, reversed(m.labels)))).reorder(m.labels)
        tally.check("relabelled copies are isomorphic", is_isomorphic(m, iso) is not None)
    for k in range(min(n, 5) + 1):
        tally.check("labeled matroid counts", len(labeled_matroids(k)) == LABELED_COUNTS[k])
        tally.check("isomorphism class counts", len(matroid_classes(k)) == CLASS_COUNTS[k])
    return tally


def suite_higgs(n: int, seed: int, count: int) -> Tally:
    from .corpus import random_quotient_pair
    from .higgs import HiggsContext, higgs_dual_pair, higgs_lift, higgs_minor, higgs_views
    from .orders import is_quotient, weak_leq
    tally = Tally("higgs")
    rng = random.Random(seed)
    for _ in range(count):
        M, N = random_quotient_pair(rng, _size(rng, n))
        for i in range(0, M.r - N.r + 1):
            L = higgs_lift(M, N, i)
            views = higgs_views(HiggsContext(M, N, i))
            for kind in FAMILIES:
                tally.check(f"lift {kind} from M and N", views[kind] == derive(L, kind),
                            {"tables": _tables(M, N), "i": i})
            tally.check("lift closure from M and N",
                        bool(np.array_equal(views["closure"], L.closure_array())))
            a, b = higgs_dual_pair(M, N, i)
            tally.check("dual of a lift is a lift of the duals", a == b)
            tally.check("lift lies between N and M", is_quotient(N, L) and is_quotient(L, M)
                        and weak_leq(N, L) and weak_leq(L, M))
            X = _random_subset(rng, M)
            tally.check("restriction of a lift", higgs_minor(M, N, i, X, "restrict") == L.restrict(X))
            tally.check("contraction of a lift", higgs_minor(M, N, i, X, "contract") == L.contract(X))
    return tally


def suite_splice(n: int, seed: int, count: int) -> Tally:
    from .corpus import random_matched_pair
    from .splice import (DEFAULT_SPLICE_CAP, contraction_formula, enumerate_splices,
                         free_splice, free_splice_as_lift, is_splice, matched_pair,
                         naive_contraction, naive_contraction_predicted, naive_restriction,
                         naive_restriction_predicted, restriction_formula, splice_views)
    from .orders import weak_leq
    tally = Tally("splice")
    rng = random.Random(seed)
    for _ in range(count):
        M, N = random_matched_pair(rng, _size(rng, n))
        p = matched_pair(M, N)
        L = free_splice(p)
        tally.check("free splice is a splice", is_splice(L, M, N), {"tables": _tables(M, N)})
        tally.check("free splice as a Higgs lift", free_splice_as_lift(p) == L)
        views = splice_views(p)
        for kind in FAMILIES:
            tally.check(f"free splice {kind} from M and N", views[kind] == derive(L, kind))
        tally.check("free splice closure from M and N",
                    bool(np.array_equal(views["closure"], L.closure_array())))
        tally.check("free splice loops and isthmuses",
                    views["loops"] == L.loops() and views["isthmuses"] == L.isthmuses())
        dual = free_splice(N.dual(), M.dual()).reorder(L.labels)
        tally.check("dual of a free splice", L.dual() == dual)
        X = L.names(rng.randrange(1 << L.n))
        tally.check("restriction formula", restriction_formula(p, None, X) == L.restrict(X))
        tally.check("contraction formula", contraction_formula(p, None, X) == L.contract_to(X))
        nr = naive_restriction(p, None, X)
        tally.check("restriction commutes exactly when predicted",
                    (nr is not None and nr == L.restrict(X)) == naive_restriction_predicted(p, None, X))
        nc = naive_contraction(p, None, X)
        tally.check("contraction commutes exactly when predicted",
                    (nc is not None and nc == L.contract_to(X)) == naive_contraction_predicted(p, None, X))
    # enumeration sub-suite; above the cap the first pair shows the cap status
    for k in range(max(1, count // 4)):
        labels = _labels(n) if k == 0 and n > DEFAULT_SPLICE_CAP else _size(rng, min(n, 6))
        M, N = random_matched_pair(rng, labels)
        p = matched_pair(M, N)
        try:
            found = enumerate_splices(p)
        except CapExceeded as exc:
            tally.status("enumeration", "cap_exceeded", str(exc))
            continue
        L = free_splice(p)
        tally.check("enumeration contains the free splice", L in found)
        tally.check("free splice is the weak-order maximum", all(weak_leq(S, L) for S in found))
    return tally


def suite_factor(n: int, seed: int, count: int) -> Tally:
    from .corpus import random_matroid
    from .factor import (class_n_decompose, free_separators, has_nontrivial_separator,
                         is_free_separator, is_free_separator_direct, is_irreducible)
    tally = Tally("factor")
    rng = random.Random(seed)
    for _ in range(count):
        L = random_matroid(rng, _size(rng, min(n, 7)))
        for _ in range(4):
            A = rng.randrange(1 << L.n)
            Bm = (L.full & ~A) | (A & rng.randrange(1 << L.n))
            tally.check("cyclic-flat test agrees with rebuilding",
                        is_free_separator(L, A, Bm) == is_free_separator_direct(L, A, Bm),
                        {"table": _tables(L), "A": A, "B": Bm})
        tally.check("irreducible exactly without nontrivial separators",
                    is_irreducible(L) == (not has_nontrivial_separator(L)))
        seps = free_separators(L)
        tally.check("listed separators are separators",
                    all(is_free_separator(L, s.A, s.B) for s in seps[:64]))
        if L.n <= 6:
            tree = class_n_decompose(L)
            if tree is not None:
                tally.check("factor trees rebuild the matroid", tree.rebuild().reorder(L.labels) == L)
    return tally


def suite_algebra(n: int, seed: int, count: int) -> Tally:
    from .algebra import (com_separator_check, com_separator_direct, commutes,
                          is_associative_triple, is_commutative_pair, random_triple,
                          weak_assoc)
    from .corpus import random_matched_pair
    from .splice import is_matched
    tally = Tally("algebra")
    rng = random.Random(seed)
    for _ in range(count):
        tr = random_triple(rng)
        if tr is None:
            tally.status("triple generation", "exhausted")
            continue
        if len(set().union(*(m.labels for m in tr))) > max(n, 1) + 3:
            continue
        rep = is_associative_triple(*tr)
        tally.check("associativity exactly when predicted", rep.predicted == rep.associative,
                    rep.to_json())
        for side in ("left", "right"):
            try:
                a, b = weak_assoc(*tr, side)
            except NotMatched:
                continue
            tally.check(f"weak associativity ({side})", a == b)
        M, N = random_matched_pair(rng, _size(rng, min(n, 6)))
        if is_matched(N, M) is not None:
            pred, _ = is_commutative_pair(M, N)
            tally.check("commutativity exactly when predicted", pred == commutes(M, N))
        L = M if M.n else N
        Bs = [x for x in L.labels if rng.random() < 0.5]
        S = [x for x in L.labels if x not in Bs]
        A = S + [x for x in Bs if rng.random() < 0.5]
        C = S + [x for x in Bs if rng.random() < 0.5]
        tally.check("separator pair test agrees with direct check",
                    com_separator_check(L, A, Bs, C) == com_separator_direct(L, A, Bs, C))
    return tally


def suite_constructions(n: int, seed: int, count: int) -> Tally:
    from .constructions import (complete_graph, fano, gf_matroid, splice_representation,
                                vamos, wheel_whirl)
    from .corpus import random_gf_matroid, random_split
    from .splice import free_splice, is_matched, is_splice
    tally = Tally("constructions")
    rng = random.Random(seed)
    V = vamos()
    Vb = V.delete(["b"])
    Vc = V.contract_to([x for x in V.labels if x != "b'"])
    tally.check("V8 is the free splice of its two minors", free_splice(Vb, Vc).reorder(V.labels) == V)
    tally.check("wheel of rank 3 is M(K4)", is_isomorphic(wheel_whirl(3), complete_graph(4)) is not None)
    tally.check("Fano plane has seven lines",
                sum(1 for z, r in fano().cyclic_flats_with_ranks() if r == 2) == 7)
    made = 0
    while made < count:
        p = rng.choice((2, 3))
        E = _size(rng, min(n, 8))
        K = random_gf_matroid(rng, E, rank=rng.randint(0, min(4, len(E))), p=p)
        A, Bs = random_split(rng, E)
        pair = is_matched(K.restrict(A), K.contract_to(Bs))
        R = splice_representation(pair, p)
        tally.check(f"represented splice over GF({p})", is_splice(gf_matroid(R), pair.M, pair.N))
        made += 1
    return tally


_RUNNERS = {
    "axioms": suite_axioms,
    "higgs": suite_higgs,
    "splice": suite_splice,
    "factor": suite_factor,
    "algebra": suite_algebra,
    "constructions": suite_constructions,
}


def run_suite(name: str, n: int = 5, seed: int = 0, count: int = 20) -> dict:
    """Run one suite, or every suite for name "all", as a JSON report."""
    names = SUITES if name == "all" else (name,)
    for s in names:
        if s not in _RUNNERS:
            raise KeyError(s)
    reports = []
    for s in names:
        reports.append(_RUNNERS[s](n, seed, count).to_json())
    return {"n": n, "seed": seed, "count": count,
            "passed": all(r["passed"] for r in reports), "suites": reports}
