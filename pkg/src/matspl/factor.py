"""Free separators, irreducibility, clones, nested matroids and
decomposition into single elements by free splices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import bits as B
from .errors import CoverageGap
from .kernel import Matroid
from .splice import free_splice


@dataclass(frozen=True)
class FreeSeparator:
    labels: tuple
    A: int
    B: int
    minimal: bool = False

    @property
    def nontrivial(self) -> bool:
        return bool(self.A & ~self.B) and bool(self.B & ~self.A)

    def names(self):
        a = tuple(self.labels[b] for b in B.bits(self.A))
        b = tuple(self.labels[b] for b in B.bits(self.B))
        return a, b


def _zs(L: Matroid) -> np.ndarray:
    return np.array(L.cyclic_flats(), dtype=np.int64)


def is_free_separator(L: Matroid, A, Bset) -> bool:
    """Every cyclic flat lies inside A or contains A-B."""
    A, Bset = L.mask(A), L.mask(Bset)
    if A | Bset != L.full:
        raise CoverageGap("A and B must cover the ground set")
    S = A & ~Bset
    Z = _zs(L)
    return bool(np.all(((Z & ~A) == 0) | ((Z & S) == S)))


def is_free_separator_direct(L: Matroid, A, Bset) -> bool:
    """Same question answered by rebuilding the free splice of L|A and L.B."""
    A, Bset = L.mask(A), L.mask(Bset)
    if A | Bset != L.full:
        raise CoverageGap("A and B must cover the ground set")
    return free_splice(L.restrict(A), L.contract_to(Bset)).reorder(L.labels) == L


def _meet_outside(L: Matroid) -> np.ndarray:
    """W[A] = intersection of the cyclic flats not contained in A."""
    n = L.n
    ms = B.masks(n)
    W = np.full(1 << n, L.full, dtype=np.int64)
    for z in L.cyclic_flats():
        out = (ms & z) != z
        W[out] &= z
    return W


def _least_partner(L: Matroid) -> np.ndarray:
    """For every A, the least B with (A, B) a free separator."""
    ms = B.masks(L.n)
    W = _meet_outside(L)
    return (L.full & ~ms) | (ms & ~W)


def _is_minimal(A: int, least: np.ndarray) -> bool:
    bA = int(least[A])
    for e in B.bits(A):
        if bA >> e & 1:
            other = int(least[A & ~(1 << e)])
            if other & ~bA == 0:
                return False
    return True


def free_separators(L: Matroid) -> list[FreeSeparator]:
    """Every free separator, ordered by (A, B)."""
    least = _least_partner(L)
    out = []
    for A in range(1 << L.n):
        bA = int(least[A])
        optional = A & ~bA
        for extra in B.submasks(optional):
            Bm = bA | extra
            out.append(FreeSeparator(L.labels, A, Bm, minimal=(extra == 0 and _is_minimal(A, least))))
    return out


def minimal_free_separators(L: Matroid) -> list[FreeSeparator]:
    least = _least_partner(L)
    return [FreeSeparator(L.labels, A, int(least[A]), minimal=True)
            for A in range(1 << L.n) if _is_minimal(A, least)]


def nontrivial_separators(L: Matroid) -> list[FreeSeparator]:
    """Free separators with both A-B and B-A nonempty, by (|A&B|, A, B)."""
    least = _least_partner(L)
    full = L.full
    out = []
    for A in range(1, full):
        bA = int(least[A])
        for extra in B.submasks(A & ~bA):
            Bm = bA | extra
            if Bm != full and A & ~Bm:
                out.append(FreeSeparator(L.labels, A, Bm))
    out.sort(key=lambda s: (B.popcount(s.A & s.B), s.A, s.B))
    return out


def is_irreducible(L: Matroid) -> bool:
    """Every ordered pair x != y is separated by a cyclic flat containing x
    and not y."""
    Z = _zs(L)
    for e in range(L.n):
        hit = Z[(Z >> e) & 1 == 1]
        meet = L.full
        for z in hit.tolist():
            meet &= z
        if meet != 1 << e:
            return False
    return True


def has_nontrivial_separator(L: Matroid) -> bool:
    least = _least_partner(L)
    full = L.full
    for A in range(1, full):
        bA = int(least[A])
        # the least partner leaves A-B and E-B as large as possible
        if bA != full and A & ~bA:
            return True
    return False


def clones(L: Matroid) -> list[tuple[str, ...]]:
    """Classes of elements lying in exactly the same cyclic flats."""
    Z = _zs(L)
    classes: dict = {}
    for e in range(L.n):
        sig = ((Z >> e) & 1).tobytes()
        classes.setdefault(sig, []).append(L.labels[e])
    return [tuple(c) for c in classes.values()]


def is_nested(L: Matroid) -> bool:
    zs = sorted(L.cyclic_flats(), key=B.popcount)
    return all(a & ~b == 0 for a, b in zip(zs, zs[1:]))


# decomposition trees -------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    label: str
    kind: str   # "loop" or "isthmus"

    def rebuild(self) -> Matroid:
        return Matroid((self.label,), [0, 0 if self.kind == "loop" else 1], check=False)

    def to_json(self) -> dict:
        return {"leaf": self.label, "kind": self.kind}


@dataclass(frozen=True)
class Node:
    A: tuple
    B: tuple
    left: "FactorTree"
    right: "FactorTree"

    def rebuild(self) -> Matroid:
        return free_splice(self.left.rebuild(), self.right.rebuild())

    def to_json(self) -> dict:
        return {"A": list(self.A), "B": list(self.B),
                "left": self.left.to_json(), "right": self.right.to_json()}


FactorTree = Union[Leaf, Node]


def tree_from_json(doc: dict) -> FactorTree:
    if "leaf" in doc:
        return Leaf(doc["leaf"], doc["kind"])
    return Node(tuple(doc["A"]), tuple(doc["B"]), tree_from_json(doc["left"]),
                tree_from_json(doc["right"]))


def tree_to_dot(tree: FactorTree) -> str:
    lines = ["digraph factor_tree {", "  node [shape=box];"]
    counter = [0]

    def visit(t) -> str:
        name = f"n{counter[0]}"
        counter[0] += 1
        if isinstance(t, Leaf):
            lines.append(f'  {name} [label="{t.label} ({t.kind})", shape=ellipse];')
            return name
        lines.append(f'  {name} [label="A={{{",".join(t.A)}}}\\nB={{{",".join(t.B)}}}"];')
        a, b = visit(t.left), visit(t.right)
        lines.append(f'  {name} -> {a} [label="L|A"];')
        lines.append(f'  {name} -> {b} [label="L.B"];')
        return name

    visit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


def class_n_decompose(L: Matroid, memo: dict | None = None):
    """A tree of free splices down to single loops and isthmuses, or None
    when L cannot be built that way."""
    if memo is None:
        memo = {}
    key = L.canonical()
    if key in memo:
        return memo[key]
    if L.n <= 1:
        if L.n == 0:
            result = None
        else:
            result = Leaf(L.labels[0], "isthmus" if L.r else "loop")
        memo[key] = result
        return result
    result = None
    for sep in nontrivial_separators(L):
        left = class_n_decompose(L.restrict(sep.A), memo)
        if left is None:
            continue
        right = class_n_decompose(L.contract_to(sep.B), memo)
        if right is None:
            continue
        a, b = sep.names()
        result = Node(a, b, left, right)
        break
    memo[key] = result
    return result


def in_class_n(L: Matroid) -> bool:
    return class_n_decompose(L) is not None
