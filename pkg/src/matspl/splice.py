"""Matched pairs, free splices, splice enumeration and related constructions.

For matroids M on A and N on B the pair (M, N) is matched when contracting
M onto A&B gives the restriction of N to A&B.  A splice is a matroid L on
A|B with L|A = M and L.B = N; the free splice is the freest one, with rank
min(r_M(X&A) + |X-A|, r_N(X&B) + r_M(A-B)).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bits as B
from .errors import (CapExceeded, CoverageGap, GpcPreconditionFailed,
                     LabelCollision, MatroidError, NotMatched)
from .higgs import higgs_lift
from .kernel import (Matroid, SubsetFamily, embed_masks, lift_array)
from .orders import modular_flat, weak_leq

DEFAULT_SPLICE_CAP = 8


@dataclass(frozen=True, eq=False)
class MatchedPair:
    M: Matroid
    N: Matroid
    labels: tuple = field(init=False)   # A in M's order, then B-A in N's order
    A: int = field(init=False)
    B: int = field(init=False)
    S: int = field(init=False)          # A-B
    T: int = field(init=False)          # A&B
    i: int = field(init=False)          # r_M(A-B)
    r: int = field(init=False)          # rank of every splice

    def __post_init__(self):
        M, N = self.M, self.N
        labels = M.labels + tuple(x for x in N.labels if x not in M._index)
        pos = {x: k for k, x in enumerate(labels)}
        A = (1 << M.n) - 1
        Bm = 0
        for x in N.labels:
            Bm |= 1 << pos[x]
        S = A & ~Bm
        i = int(M.table[S])  # S lies in the first M.n positions
        for name, val in (("labels", labels), ("A", A), ("B", Bm), ("S", S),
                          ("T", A & Bm), ("i", i), ("r", i + N.r)):
            object.__setattr__(self, name, val)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def names(self, mask: int) -> tuple:
        return tuple(self.labels[b] for b in B.bits(mask))

    def mask(self, labels) -> int:
        pos = {x: k for k, x in enumerate(self.labels)}
        if isinstance(labels, (int, np.integer)):
            return int(labels)
        if isinstance(labels, str):
            labels = [labels]
        out = 0
        for x in labels:
            out |= 1 << pos[x]
        return out

    def overlap_labels(self) -> tuple:
        return self.names(self.T)


def _overlap(M: Matroid, N: Matroid) -> list:
    return [x for x in M.labels if x in N._index]


def is_matched(M: Matroid, N: Matroid) -> MatchedPair | None:
    T = _overlap(M, N)
    if M.contract_to(T) != N.restrict(T).reorder(M.contract_to(T).labels):
        return None
    return MatchedPair(M, N)


def matched_pair(M: Matroid, N: Matroid) -> MatchedPair:
    """MatchedPair or NotMatched naming the disagreeing overlap minors."""
    T = _overlap(M, N)
    left = M.contract_to(T)
    right = N.restrict(T).reorder(left.labels)
    if left != right:
        raise NotMatched("(M, N)", f"contraction of M onto {{{','.join(T)}}} has ranks "
                         f"{left.table.tolist()} but the restriction of N has {right.table.tolist()}")
    return MatchedPair(M, N)


def _pair(pair_or_M, N=None) -> MatchedPair:
    if isinstance(pair_or_M, MatchedPair):
        return pair_or_M
    return matched_pair(pair_or_M, N)


def extend_ist(pair_or_M, N=None) -> Matroid:
    """M1 = M + I(B-A)."""
    p = _pair(pair_or_M, N)
    ms = B.masks(p.n)
    t = p.M.extend_table(p.labels) + B.popcounts(p.n)[ms & ~p.A]
    return Matroid(p.labels, t, check=False)


def extend_loo(pair_or_M, N=None) -> Matroid:
    """N0 = N + I*(A-B)."""
    p = _pair(pair_or_M, N)
    return Matroid(p.labels, p.N.extend_table(p.labels), check=False)


def free_splice(pair_or_M, N=None) -> Matroid:
    p = _pair(pair_or_M, N)
    M1, N0 = extend_ist(p), extend_loo(p)
    return Matroid(p.labels, np.minimum(M1.table, N0.table + np.int8(p.i)), check=False)


def free_splice_as_lift(pair_or_M, N=None) -> Matroid:
    """The free splice built as the Higgs lift of N0 towards M1 by r_M(A-B)."""
    p = _pair(pair_or_M, N)
    return higgs_lift(extend_ist(p), extend_loo(p), p.i)


def free_product(M: Matroid, N: Matroid) -> Matroid:
    common = set(M.labels) & set(N.labels)
    if common:
        raise LabelCollision(f"free product needs disjoint ground sets, shared: {sorted(common)}")
    return free_splice(MatchedPair(M, N))


def is_splice(L: Matroid, M: Matroid, N: Matroid) -> bool:
    try:
        return L.restrict(M.labels) == M and L.contract_to(N.labels) == N
    except MatroidError:
        return False


# cryptomorphic views ---------------------------------------------------

def splice_views(pair_or_M, N=None) -> dict:
    """Families of the free splice computed from M and N directly.

    Keys as for the Higgs views, plus loops and isthmuses (as masks).
    """
    p = _pair(pair_or_M, N)
    M, N = p.M, p.N
    E, n = p.labels, p.n
    ms = B.masks(n)
    pc = B.popcounts(n)
    A, S, Bm = p.A, p.S, p.B

    def on_A(a):
        return lift_array(a, M.labels, E)

    def on_B(a):
        return lift_array(a, N.labels, E)

    inside_A = (ms & ~A) == 0
    has_S = (ms & S) == S
    rMA, rNB = on_A(M.table).astype(np.int16), on_B(N.table).astype(np.int16)
    out_A = pc[ms & ~A]
    IA = on_A(M.family_array("independent"))
    SB = on_B(N.family_array("spanning"))
    below = rMA + out_A < p.i + rNB
    arrays = {
        "independent": IA & (pc <= p.i + rNB),
        "spanning": SB & (rMA + out_A >= p.r),
        "bases": IA & SB & (pc == p.r),
        "circuits": (on_A(M.family_array("circuits")) & inside_A)
        | (IA & on_B(N.family_array("cyclic_sets")) & (rNB == pc - p.i - 1)),
        "flats": (on_A(M.family_array("flats")) & below)
        | (on_B(N.family_array("flats")) & has_S),
    }
    ZMa = on_A(M.family_array("cyclic_flats")) & inside_A
    ZNb = on_B(N.family_array("cyclic_flats"))
    arrays["cyclic_flats"] = (ZMa & ~has_S) | (ZMa & has_S & ZNb) | (has_S & ~inside_A & ZNb)
    out = {k: SubsetFamily(E, k, frozenset(int(x) for x in np.flatnonzero(a)))
           for k, a in arrays.items()}
    embA, embB = embed_masks(M.labels, E), embed_masks(N.labels, E)
    clA = embA[on_A(M.closure_array())] | ms
    clB = embB[on_B(N.closure_array())] | S
    out["closure"] = np.where(below, clA, clB)
    loops_M = int(embA[M.loops()])
    loops_N = int(embB[N.loops()])
    out["loops"] = loops_M | loops_N if S & ~loops_M == 0 else loops_M
    isth_M = int(embA[M.isthmuses()])
    isth_N = int(embB[N.isthmuses()])
    out["isthmuses"] = isth_M | isth_N if (Bm & ~A) & ~isth_N == 0 else isth_N
    return out


# splice enumeration ----------------------------------------------------

def _search_splices(n, fixed, lower, upper, tM1, tN0, limit=None):
    """All completions of ``fixed`` (free cells are -1) to matroid rank
    tables between ``lower`` and ``upper`` that are quotients of tM1 and
    have tN0 as a quotient."""
    vals = fixed.astype(np.int16).tolist()
    tM1 = tM1.astype(np.int16).tolist()
    tN0 = tN0.astype(np.int16).tolist()
    lower = lower.tolist()
    upper = upper.tolist()
    free = [x for x in range(1 << n) if vals[x] < 0]
    plans = []
    for Y in free:
        subs = [Y ^ (1 << e) for e in range(n) if Y >> e & 1]
        sups = [Y | (1 << e) for e in range(n) if not Y >> e & 1]
        squares = []
        for f in range(n):
            for e in range(f):
                be, bf = 1 << e, 1 << f
                ine, inf_ = Y & be, Y & bf
                if ine and inf_:
                    squares.append((Y ^ be ^ bf, Y ^ be, Y ^ bf, Y))
                elif ine:
                    X = Y ^ be
                    squares.append((X, Y, X | bf, Y | bf))
                elif inf_:
                    X = Y ^ bf
                    squares.append((X, X | be, Y, Y | be))
                else:
                    squares.append((Y, Y | be, Y | bf, Y | be | bf))
        plans.append((Y, subs, sups, squares))
    results = []

    def ok_square(sq):
        a, b, c, d = (vals[x] for x in sq)
        if a < 0 or b < 0 or c < 0 or d < 0:
            return True
        return b + c >= a + d

    def go(k):
        if limit is not None and len(results) >= limit:
            return
        if k == len(plans):
            results.append(list(vals))
            return
        Y, subs, sups, squares = plans[k]
        lo, hi = lower[Y], upper[Y]
        for Z in subs:
            v = vals[Z]
            lo = max(lo, v, v + tN0[Y] - tN0[Z])
            hi = min(hi, v + 1, v + tM1[Y] - tM1[Z])
        for Z in sups:
            v = vals[Z]
            if v >= 0:
                lo = max(lo, v - 1, v + tM1[Y] - tM1[Z])
                hi = min(hi, v, v + tN0[Y] - tN0[Z])
        for val in range(lo, hi + 1):
            vals[Y] = val
            if all(ok_square(sq) for sq in squares):
                go(k + 1)
        vals[Y] = -1

    go(0)
    return results


def enumerate_splices(pair_or_M, N=None, cap: int = DEFAULT_SPLICE_CAP) -> list[Matroid]:
    """Every splice of a matched pair, sorted by rank table."""
    p = _pair(pair_or_M, N)
    if p.n > cap:
        raise CapExceeded(f"splice enumeration is capped at {cap} elements, got {p.n}")
    n = p.n
    F = free_splice(p)
    M1, N0 = extend_ist(p), extend_loo(p)
    ms = B.masks(n)
    determined = ((ms & ~p.A) == 0) | ((ms & p.S) == p.S)
    fixed = np.where(determined, F.table, -1)
    found = _search_splices(n, fixed, N0.table, F.table, M1.table, N0.table)
    out = []
    for t in found:
        L = Matroid(p.labels, np.array(t), check=True)
        if not is_splice(L, p.M, p.N):
            raise AssertionError("enumerated matroid is not a splice")
        out.append(L)
    out.sort(key=lambda L: L.table.tolist())
    return out


def weak_order_covers(ms: list[Matroid]) -> list[tuple[int, int]]:
    """Cover pairs (i, j), meaning ms[i] < ms[j] with nothing in between."""
    k = len(ms)
    less = [[i != j and weak_leq(ms[i], ms[j]) for j in range(k)] for i in range(k)]
    covers = []
    for i in range(k):
        for j in range(k):
            if less[i][j] and not any(less[i][m] and less[m][j] for m in range(k)):
                covers.append((i, j))
    return covers


def splice_poset_dot(splices: list[Matroid], free: Matroid | None = None) -> str:
    """Hasse diagram of a set of matroids under the weak order, in DOT."""
    lines = ["digraph splices {", "  rankdir=BT;", "  node [shape=box];"]
    for k, L in enumerate(splices):
        circ = [c for c in L.circuits() if B.popcount(c) <= L.r]
        label = "r=%d; nonspanning circuits: %s" % (
            L.r, " ".join("{" + ",".join(L.names(c)) + "}" for c in circ) or "none")
        style = ", style=bold" if free is not None and L == free else ""
        lines.append(f'  s{k} [label="{label}"{style}];')
    for i, j in weak_order_covers(splices):
        lines.append(f"  s{i} -> s{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# further constructions ---------------------------------------------------

def intersection_decomposition(pair_or_M, N=None):
    """(M|(A-B) free product N, M free product N.(B-A)); the free splice has
    exactly the common bases of the two."""
    p = _pair(pair_or_M, N)
    M, N = p.M, p.N
    S_labels = [x for x in M.labels if x not in N._index]
    BA_labels = [x for x in N.labels if x not in M._index]
    first = free_product(M.restrict(S_labels), N).reorder(p.labels)
    second = free_product(M, N.contract_to(BA_labels)).reorder(p.labels)
    return first, second


def splice_closure(L: Matroid, A, Bset) -> Matroid:
    """L|A free-spliced with L.B."""
    A, Bset = L.mask(A), L.mask(Bset)
    if A | Bset != L.full:
        raise CoverageGap("A and B must cover the ground set")
    return free_splice(L.restrict(A), L.contract_to(Bset)).reorder(L.labels)


def gpc(M: Matroid, N: Matroid, check: bool = True) -> Matroid:
    """Generalized parallel connection across T = A&B.

    Its flats are the sets F with F&A a flat of M and F&B a flat of N.  The
    labels are ordered A-T, T, B-T.
    """
    T = [x for x in M.labels if x in N._index]
    if check:
        if M.restrict(T) != N.restrict(T):
            raise GpcPreconditionFailed("restrictions to the common set differ", T)
        clT = M.closure(T)
        if not modular_flat(M, clT):
            raise GpcPreconditionFailed("closure of the common set is not a modular flat",
                                        M.names(clT))
        Tm = M.mask(T)
        for b in B.bits(clT & ~Tm):
            if M.table[1 << b] == 0:
                continue
            if not any(M.table[(1 << b) | (1 << c)] == 1 for c in B.bits(Tm)):
                raise GpcPreconditionFailed(
                    "element in the closure of the common set is neither a loop nor parallel "
                    "to a common element", (M.labels[b],))
    labels = (tuple(x for x in M.labels if x not in N._index) + tuple(T)
              + tuple(x for x in N.labels if x not in M._index))
    n = len(labels)
    flats = lift_array(M.family_array("flats"), M.labels, labels)
    flats &= lift_array(N.family_array("flats"), N.labels, labels)
    dt = np.int32 if n < 31 else np.int64
    cl = np.where(flats, np.arange(1 << n, dtype=dt), dt(-1))
    del flats
    B.zeta_superset_and(cl, n)
    ind = np.ones(1 << n, dtype=bool)
    for e in range(n):
        clo, _ = B.halves(cl, e)
        _, ihi = B.halves(ind, e)
        ihi &= ((clo >> e) & 1) == 0
    del cl
    t = np.where(ind, B.popcounts(n), np.int8(0)).astype(np.int8)
    del ind
    B.zeta_subset_max(t, n)
    return Matroid(labels, t, check=False)


# minors of free splices ----------------------------------------------------

def restriction_formula(pair_or_M, N, X) -> Matroid:
    """(M free-splice N)|X as M|(X&A) free-spliced with
    N' = L^j of N|(X&B) towards (M1|X).(X&B), j = r_M(A-B) - r_M(X-B)."""
    p = _pair(pair_or_M, N)
    X = p.mask(X)
    M, N = p.M, p.N
    XA, XB = p.names(X & p.A), p.names(X & p.B)
    j = p.i - int(M.table[M.mask(p.names(X & ~p.B))])
    top = extend_ist(p).restrict(X).contract_to(XB)
    Nprime = higgs_lift(top, N.restrict(XB), j)
    return free_splice(M.restrict(XA), Nprime).reorder(p.names(X))


def contraction_formula(pair_or_M, N, X) -> Matroid:
    """(M free-splice N).X as M' free-spliced with N.(X&B), where
    M' = L^k of (N0.X)|(X&A) towards M.(X&A) and
    k = r_M(A-B) - r_M(A-X) + r_N(B-X) - |B-(A|X)|."""
    p = _pair(pair_or_M, N)
    X = p.mask(X)
    M, N = p.M, p.N
    XA, XB = p.names(X & p.A), p.names(X & p.B)
    k = (p.i - int(M.table[M.mask(p.names(p.A & ~X))]) + int(N.table[N.mask(p.names(p.B & ~X))])
         - B.popcount(p.B & ~(p.A | X)))
    bottom = extend_loo(p).contract_to(X).restrict(XA)
    Mprime = higgs_lift(M.contract_to(XA), bottom, k)
    return free_splice(Mprime, N.contract_to(XB)).reorder(p.names(X))


def naive_restriction(pair_or_M, N, X):
    """M|(X&A) free-spliced with N|(X&B), or None when that pair is not matched."""
    p = _pair(pair_or_M, N)
    X = p.mask(X)
    q = is_matched(p.M.restrict(p.names(X & p.A)), p.N.restrict(p.names(X & p.B)))
    return None if q is None else free_splice(q).reorder(p.names(X))


def naive_contraction(pair_or_M, N, X):
    p = _pair(pair_or_M, N)
    X = p.mask(X)
    q = is_matched(p.M.contract_to(p.names(X & p.A)), p.N.contract_to(p.names(X & p.B)))
    return None if q is None else free_splice(q).reorder(p.names(X))


def _modular_pair(m: Matroid, X: int, Y: int) -> bool:
    t = m.table
    return int(t[X]) + int(t[Y]) == int(t[X | Y]) + int(t[X & Y])


def naive_restriction_predicted(pair_or_M, N, X) -> bool:
    """Whether restriction commutes with the free splice factor by factor."""
    p = _pair(pair_or_M, N)
    X = p.mask(X)
    M, N = p.M, p.N
    S = M.mask(p.names(p.S))
    XmB = M.mask(p.names(X & ~p.B))
    if int(M.table[S]) == int(M.table[XmB]):
        return True
    NX = N.restrict(p.names(X & p.B))
    outside = NX.mask(p.names(X & ~p.A))
    if outside & ~NX.isthmuses():
        return False
    return _modular_pair(M, S, M.mask(p.names(X & p.A)))


def naive_contraction_predicted(pair_or_M, N, X) -> bool:
    p = _pair(pair_or_M, N)
    X = p.mask(X)
    M, N = p.M, p.N
    BA = p.B & ~p.A
    NR = N.restrict(p.names(p.B & ~(X & ~p.A)))
    if NR.mask(p.names(BA & ~X)) & ~NR.isthmuses() == 0:
        return True
    MX = M.contract_to(p.names(X & p.A))
    if MX.mask(p.names(X & ~p.B)) & ~MX.loops():
        return False
    return _modular_pair(N, N.mask(p.names(p.T)), N.mask(p.names(p.B & ~X)))
