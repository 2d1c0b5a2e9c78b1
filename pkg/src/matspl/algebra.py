"""Associativity and commutativity of the free splice."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .corpus import _rng, labeled_matroids, random_cut, random_matroid
from .errors import CoverageGap, NotMatched
from .kernel import Matroid, direct_sum, free_matroid, loop_matroid
from .orders import extension_from_cut
from .splice import free_splice, is_matched


def _labels(m: Matroid) -> set:
    return set(m.labels)


def _splice(M: Matroid, N: Matroid, which: str) -> Matroid:
    p = is_matched(M, N)
    if p is None:
        raise NotMatched(which)
    return free_splice(p)


def _order(*ms: Matroid) -> tuple:
    seen = []
    for m in ms:
        for x in m.labels:
            if x not in seen:
                seen.append(x)
    return tuple(seen)


def weak_assoc(M: Matroid, N: Matroid, P: Matroid, side: str = "left"):
    """Both sides of the weak associativity identity.

    left:  (M*N)*P  and  M*(N'*P)  with N' = M.U * N, U = A&(B|C)
    right: M*(N*P)  and  (M*N'')*P with N'' = N * P|V, V = (A|B)&C
    where * is the free splice.
    """
    A, Bl, C = _labels(M), _labels(N), _labels(P)
    E = _order(M, N, P)
    if side == "left":
        MN = _splice(M, N, "(M, N)")
        lhs = _splice(MN, P, "(M*N, P)")
        U = [x for x in M.labels if x in Bl | C]
        Np = _splice(M.contract_to(U), N, "(M.U, N)")
        rhs = _splice(M, _splice(Np, P, "(N', P)"), "(M, N'*P)")
    elif side == "right":
        NP = _splice(N, P, "(N, P)")
        lhs = _splice(M, NP, "(M, N*P)")
        V = [x for x in P.labels if x in A | Bl]
        Npp = _splice(N, P.restrict(V), "(N, P|V)")
        rhs = _splice(_splice(M, Npp, "(M, N'')"), P, "(M*N'', P)")
    else:
        raise ValueError(f"unknown side {side!r}")
    return lhs.reorder(E), rhs.reorder(E)


@dataclass
class TripleReport:
    M: Matroid
    N: Matroid
    P: Matroid
    left: Matroid
    right: Matroid
    overlap_outside_B: tuple          # (A&C)-B
    cond_a: bool
    cond_b: bool
    cond_c: bool
    N_prime: Matroid | None = None
    N_double_prime: Matroid | None = None
    matched: dict = field(default_factory=dict)

    @property
    def predicted(self) -> bool:
        return not self.overlap_outside_B or self.cond_a or self.cond_b or self.cond_c

    @property
    def associative(self) -> bool:
        return self.left == self.right

    def to_json(self) -> dict:
        return {
            "grounds": [list(self.M.labels), list(self.N.labels), list(self.P.labels)],
            "matched": self.matched,
            "overlap_outside_B": list(self.overlap_outside_B),
            "conditions": {"a": self.cond_a, "b": self.cond_b, "c": self.cond_c},
            "predicted": self.predicted,
            "associative": self.associative,
        }


def _subset(xs, m: Matroid, kind: str) -> bool:
    mask = m.loops() if kind == "loops" else m.isthmuses()
    return all(mask >> m._index[x] & 1 for x in xs)


def is_associative_triple(M: Matroid, N: Matroid, P: Matroid) -> TripleReport:
    A, Bl, C = _labels(M), _labels(N), _labels(P)
    matched = {}
    mn = is_matched(M, N)
    matched["(M,N)"] = mn is not None
    np_ = is_matched(N, P)
    matched["(N,P)"] = np_ is not None
    MN = free_splice(mn) if mn else None
    NP = free_splice(np_) if np_ else None
    q1 = is_matched(MN, P) if MN is not None else None
    q2 = is_matched(M, NP) if NP is not None else None
    matched["(M*N,P)"] = q1 is not None
    matched["(M,N*P)"] = q2 is not None
    for name, ok in matched.items():
        if not ok:
            raise NotMatched(name)
    E = _order(M, N, P)
    left = free_splice(q1).reorder(E)
    right = free_splice(q2).reorder(E)
    W = [x for x in M.labels if x in C and x not in Bl]            # (A&C)-B
    BA = [x for x in N.labels if x not in A]
    BC = [x for x in N.labels if x not in C]
    T = [x for x in P.labels if x in A and x in Bl]                # A&B&C
    cond_a = _subset(W, M, "isthmuses") and _subset(BA, N, "isthmuses")
    cond_b = _subset(W, P, "loops") and _subset(BC, N, "loops")
    cond_c = (Bl <= A | C and _subset(BA, N, "isthmuses") and _subset(BC, N, "loops")
              and _modular(P, P.mask(W), P.mask(T)))
    U = [x for x in M.labels if x in Bl | C]
    V = [x for x in P.labels if x in A | Bl]
    Np = is_matched(M.contract_to(U), N)
    Npp = is_matched(N, P.restrict(V))
    return TripleReport(M, N, P, left, right, tuple(W), cond_a, cond_b, cond_c,
                        free_splice(Np) if Np else None, free_splice(Npp) if Npp else None,
                        matched)


def _modular(m: Matroid, X: int, Y: int) -> bool:
    t = m.table
    return int(t[X]) + int(t[Y]) == int(t[X | Y]) + int(t[X & Y])


def is_commutative_pair(M: Matroid, N: Matroid):
    """(predicted verdict, name of the condition that holds or None)."""
    if is_matched(M, N) is None:
        raise NotMatched("(M, N)")
    if is_matched(N, M) is None:
        raise NotMatched("(N, M)")
    A, Bl = _labels(M), _labels(N)
    AB = [x for x in M.labels if x not in Bl]
    BA = [x for x in N.labels if x not in A]
    if _subset(AB, M, "loops") and _subset(BA, N, "loops"):
        return True, "a"
    if _subset(AB, M, "isthmuses") and _subset(BA, N, "isthmuses"):
        return True, "b"
    if Bl <= A and _modular(M, M.mask(list(Bl)), M.mask(AB)):
        return True, "c"
    if A <= Bl and _modular(N, N.mask(list(A)), N.mask(BA)):
        return True, "d"
    return False, None


def commutes(M: Matroid, N: Matroid) -> bool:
    E = _order(M, N)
    return free_splice(M, N).reorder(E) == free_splice(N, M).reorder(E)


def com_separator_check(L: Matroid, A, Bset, C) -> bool:
    """Whether (A,B) and (B,C) are free separators with L|B = L.B, decided
    from loops, isthmuses and one modular pair."""
    A, Bset, C = L.mask(A), L.mask(Bset), L.mask(C)
    if A | Bset != L.full or Bset | C != L.full:
        raise CoverageGap("need A|B = B|C = E")
    S = A & ~Bset            # equals C-B since both covers are E
    if S == 0:
        return True
    isth, loops = L.isthmuses(), L.loops()
    if (S | (Bset & ~A)) & ~isth == 0:
        return True
    if (S | (Bset & ~C)) & ~loops == 0:
        return True
    return (Bset & ~(A | C) == 0 and (Bset & ~A) & ~isth == 0 and (Bset & ~C) & ~loops == 0
            and _modular(L, S, A & Bset & C))


def com_separator_direct(L: Matroid, A, Bset, C) -> bool:
    from .factor import is_free_separator
    A, Bset, C = L.mask(A), L.mask(Bset), L.mask(C)
    return (is_free_separator(L, A, Bset) and is_free_separator(L, Bset, C)
            and L.restrict(Bset) == L.contract_to(Bset))


def commuting_triple(case: str, Q: Matroid | None = None, R: Matroid | None = None,
                     T=(), S=(), BA=(), CA=(), AC=(), BC=()):
    """Matroids M(A), N(B), P(C) with M*N = N*P, built from one of the three
    shapes that force it.  Label arguments: T the common part of all three,
    S = A-B = C-B, and BA, CA, AC, BC the differences B-A, C-A, A-C, B-C.

    case "a": Q on A&B (T inside it); M = I(S)+Q, N = Q+I(B-A),
      P = I(S)+Q.T+I(C-A).
    case "b": R on B&C (T inside it); M = I*(S)+R|T+I*(A-C),
      N = R+I*(B-C), P = I*(S)+R.
    case "c": Q on S and R on T; M = Q+R+I*(A-C), N = R+I*(A-C)+I(C-A),
      P = Q+R+I(C-A).
    """
    T = list(T)
    if case == "a":
        M = direct_sum(free_matroid(S), Q)
        N = direct_sum(Q, free_matroid(BA))
        P = direct_sum(direct_sum(free_matroid(S), Q.contract_to(T)), free_matroid(CA))
    elif case == "b":
        M = direct_sum(direct_sum(loop_matroid(S), R.restrict(T)), loop_matroid(AC))
        N = direct_sum(R, loop_matroid(BC))
        P = direct_sum(loop_matroid(S), R)
    elif case == "c":
        M = direct_sum(direct_sum(Q, R), loop_matroid(AC))
        N = direct_sum(direct_sum(R, loop_matroid(AC)), free_matroid(CA))
        P = direct_sum(direct_sum(Q, R), free_matroid(CA))
    else:
        raise ValueError(f"unknown case {case!r}")
    return M, N, P


# triple generation ---------------------------------------------------------

REGIONS = ("a", "b", "c", "ab", "ac", "bc", "abc")


def region_labels(sizes: dict) -> tuple[list, list, list]:
    """Ground sets A, B, C from the sizes of the seven Venn regions; an
    element of region "ac" is named ac0, ac1, ..."""
    A, Bl, C = [], [], []
    for reg in REGIONS:
        for k in range(sizes.get(reg, 0)):
            lab = f"{reg}{k}"
            if "a" in reg:
                A.append(lab)
            if "b" in reg:
                Bl.append(lab)
            if "c" in reg:
                C.append(lab)
    return A, Bl, C


def _extend_to(rng, X: Matroid, labels) -> Matroid:
    """Random matroid on ``labels`` whose restriction to X's ground is X."""
    m = X
    for lab in labels:
        if lab not in m._index:
            m = extension_from_cut(random_cut(rng, m), lab)
    return m.reorder(labels)


def random_triple(seed, sizes: dict | None = None, tries: int = 200):
    """Random (M, N, P) satisfying all four matching hypotheses, or None.

    M and N come from the minors of a random matroid; P extends (M*N).V by
    random single-element extensions; the rest is rejection sampling."""
    rng = _rng(seed)
    for _ in range(tries):
        sz = sizes or {r: rng.choice((0, 0, 1, 1, 2)) for r in REGIONS}
        A, Bl, C = region_labels(sz)
        E = list(dict.fromkeys(A + Bl))
        K = random_matroid(rng, E)
        M, N = K.restrict(A), K.contract_to(Bl)
        MN = free_splice(M, N)
        V = [x for x in C if x in MN._index]
        P = _extend_to(rng, MN.contract_to(V), C)
        if is_matched(N, P) is None:
            continue
        NP = free_splice(N, P)
        if is_matched(M, NP) is None:
            continue
        return M, N, P
    return None


def tiny_triples(max_part: int = 2, max_ground: int = 5):
    """Every triple of labeled matroids with all four matching hypotheses
    whose ground sets each have at most ``max_part`` elements."""
    for combo in itertools.product(range(max_part + 1), repeat=len(REGIONS)):
        sizes = dict(zip(REGIONS, combo))
        A, Bl, C = region_labels(sizes)
        if max(len(A), len(Bl), len(C)) > max_part or sum(combo) > max_ground:
            continue
        for M in _all_on(A):
            for N in _all_on(Bl):
                mn = is_matched(M, N)
                if mn is None:
                    continue
                MN = free_splice(mn)
                for P in _all_on(C):
                    if is_matched(MN, P) is None or is_matched(N, P) is None:
                        continue
                    if is_matched(M, free_splice(N, P)) is None:
                        continue
                    yield M, N, P


def _all_on(labels) -> list[Matroid]:
    base = labeled_matroids(len(labels))
    if not labels:
        return list(base)
    return [m.relabel(dict(zip(m.labels, labels))) for m in base]
