"""Higgs lifts: L = L^i_{M,N} with rank min(r_M, r_N + i) for a quotient N of M."""
from __future__ import annotations

import numpy as np

from . import bits as B
from .errors import NotAQuotient
from .kernel import Matroid, SubsetFamily, same_ground
from .orders import is_quotient


def _checked(M: Matroid, N: Matroid) -> Matroid:
    N = same_ground(M, N)
    if not is_quotient(N, M):
        raise NotAQuotient("second matroid is not a quotient of the first")
    return N


def _lift_table(M: Matroid, N: Matroid, i: int) -> np.ndarray:
    i = min(i, M.r - N.r)
    return np.minimum(M.table, N.table + np.int8(i))


def higgs_lift(M: Matroid, N: Matroid, i: int, check: bool = True) -> Matroid:
    """i-th Higgs lift of N towards M, on M's label order.  i < 0 gives N and
    i >= r(M)-r(N) gives M."""
    N = _checked(M, N) if check else same_ground(M, N)
    if i < 0:
        return N
    if i >= M.r - N.r:
        return M
    return Matroid(M.labels, _lift_table(M, N, i), check=False)


class HiggsContext:
    """M, N with N a quotient of M, and an integer i.  The J families compare
    r_M(X) - r_N(X) with i and are computed on demand."""

    def __init__(self, M: Matroid, N: Matroid, i: int):
        self.M = M
        self.N = _checked(M, N)
        self.i = i
        self._d = None

    @property
    def diff(self) -> np.ndarray:
        if self._d is None:
            self._d = self.M.table - self.N.table
        return self._d

    def J(self, rel: str) -> np.ndarray:
        d, i = self.diff, self.i
        if rel == "<":
            return d < i
        if rel == "<=":
            return d <= i
        if rel == ">":
            return d > i
        if rel == ">=":
            return d >= i
        if rel == "=":
            return d == i
        if rel == "succ":
            return d == i + 1
        raise ValueError(f"unknown relation {rel!r}")

    def in_J(self, rel: str, X: int) -> bool:
        return bool(self.J(rel)[X])

    def lift(self) -> Matroid:
        return higgs_lift(self.M, self.N, self.i, check=False)


def higgs_views(ctx: HiggsContext) -> dict:
    """The families of the lift computed from M, N and the J families alone.

    Keys: independent, spanning, bases, circuits, flats, cyclic_flats (as
    SubsetFamily) and closure (array of closures of every set).
    """
    if ctx.i < 0:
        raise ValueError("views need i >= 0")
    M, N = ctx.M, ctx.N
    Jlt, Jle, Jgt, Jge, Jeq, Jsucc = (ctx.J(r) for r in ("<", "<=", ">", ">=", "=", "succ"))
    IM = M.family_array("independent")
    SN = N.family_array("spanning")
    ZM, ZN = M.family_array("cyclic_flats"), N.family_array("cyclic_flats")
    arrays = {
        "independent": IM & Jle,
        "spanning": SN & Jge,
        "bases": IM & SN & Jeq,
        "circuits": (M.family_array("circuits") & Jle) | (IM & N.family_array("cyclic_sets") & Jsucc),
        "flats": (M.family_array("flats") & Jlt) | N.family_array("flats"),
        "cyclic_flats": (ZM & Jlt) | (ZN & Jgt) | (ZM & ZN),
    }
    out = {k: SubsetFamily(M.labels, k, frozenset(int(x) for x in np.flatnonzero(a)))
           for k, a in arrays.items()}
    out["closure"] = np.where(Jlt, M.closure_array(), N.closure_array())
    return out


def higgs_dual_pair(M: Matroid, N: Matroid, i: int):
    """(dual of L^i_{M,N}, L^j_{N*,M*}) with i + j = r(M) - r(N)."""
    N = _checked(M, N)
    j = M.r - N.r - i
    return higgs_lift(M, N, i).dual(), higgs_lift(N.dual(), M.dual(), j).reorder(M.labels)


def principal_lift(P: Matroid, A, i: int) -> Matroid:
    """i-fold principal lift at A: L^i of P towards (P minus A) + I(A)."""
    A = P.mask(A)
    ms = B.masks(P.n)
    top = Matroid(P.labels, P.table[ms & ~A] + B.popcounts(P.n)[ms & A], check=False)
    return higgs_lift(top, P, i, check=False)


def principal_truncation(P: Matroid, A, i: int) -> Matroid:
    """i-fold principal truncation at A: L^{r(A)-i} of (P/A) + I*(A) towards P."""
    A = P.mask(A)
    ms = B.masks(P.n)
    bottom = Matroid(P.labels, P.table[ms | A] - P.table[A], check=False)
    return higgs_lift(P, bottom, int(P.table[A]) - i, check=False)


def higgs_minor(M: Matroid, N: Matroid, i: int, A, mode: str = "restrict") -> Matroid:
    """The minor of L^i_{M,N} built from minors of M and N.

    mode "restrict" gives L|A = L^i_{M|A,N|A}; mode "contract" gives
    L/A = L^{i-k}_{M/A,N/A} with k = r_M(A) - r_N(A).
    """
    N = _checked(M, N)
    A = M.mask(A)
    if mode == "restrict":
        return higgs_lift(M.restrict(A), N.restrict(A), i, check=False)
    if mode == "contract":
        k = int(M.table[A]) - int(N.table[A])
        return higgs_lift(M.contract(A), N.contract(A), i - k, check=False)
    raise ValueError(f"unknown mode {mode!r}")
