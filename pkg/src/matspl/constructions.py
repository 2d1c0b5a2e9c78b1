"""Named matroids and field, graph and set-system constructions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import bits as B
from .errors import NotMatched, NotRepresentable, SizeCapExceeded
from .gf import GFMatrix, column_rank_table, gf_matroid, rref
from .kernel import Matroid, from_bases, from_cyclic_flats, truncate, uniform


# set systems ----------------------------------------------------------

@dataclass(frozen=True)
class SetSystem:
    labels: tuple
    sets: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        extra = set().union(*self.sets) - set(self.labels) if self.sets else set()
        if extra:
            raise ValueError(f"set system uses unknown labels {sorted(extra)}")


def transversal_rank_table(n: int, adjacency: list[int]) -> np.ndarray:
    """r(X) = max matching of X into the sets, where adjacency[e] is the mask
    of sets containing e.  Uses the deficiency form of Hall's theorem:
    r(X) = |X| + min over Y subset of X of (|N(Y)| - |Y|)."""
    nb = np.zeros(1 << n, dtype=np.int64)
    for e in range(n):
        nb[1 << e: 1 << (e + 1)] = nb[: 1 << e] | adjacency[e]
    pc = B.popcounts(n).astype(np.int16)
    g = np.bitwise_count(nb).astype(np.int16) - pc
    for e in range(n):
        lo, hi = B.halves(g, e)
        np.minimum(hi, lo, out=hi)
    return (pc + g).astype(np.int8)


def transversal(system, sets=None) -> Matroid:
    """Transversal matroid of a SetSystem, or of (labels, sets)."""
    if sets is not None:
        system = SetSystem(tuple(system), tuple(sets))
    labels = system.labels
    adj = [0] * len(labels)
    for j, s in enumerate(system.sets):
        for i, x in enumerate(labels):
            if x in s:
                adj[i] |= 1 << j
    return Matroid(labels, transversal_rank_table(len(labels), adj), check=False)


def simplex_system(n: int, vertices: bool) -> SetSystem:
    """One set per vertex of K_n, an element freely on each edge, and
    optionally one element at each vertex."""
    labels = []
    sets = [set() for _ in range(n)]
    if vertices:
        for v in range(n):
            labels.append(f"v{v}")
            sets[v].add(f"v{v}")
    for u, v in itertools.combinations(range(n), 2):
        lab = f"e{u}{v}"
        labels.append(lab)
        sets[u].add(lab)
        sets[v].add(lab)
    return SetSystem(tuple(labels), tuple(sets))


def edge_transversal(n: int) -> Matroid:
    """B'_n: elements freely placed on the edges of an (n-1)-simplex."""
    return transversal(simplex_system(n, vertices=False))


def simplex_transversal(n: int) -> Matroid:
    """B_n: B'_n plus one element at each vertex."""
    return transversal(simplex_system(n, vertices=True))


# graphs and fields ----------------------------------------------------

def graphic(edges, labels=None) -> Matroid:
    """Cycle matroid.  ``edges`` is a list of vertex pairs; labels default to
    the concatenated endpoint names."""
    edges = [tuple(e) for e in edges]
    if labels is None:
        labels = [f"{u}{v}" for u, v in edges]
    verts = sorted({v for e in edges for v in e}, key=str)
    idx = {v: i for i, v in enumerate(verts)}
    a = np.zeros((max(len(verts), 1), len(edges)), dtype=np.int64)
    for j, (u, v) in enumerate(edges):
        if u != v:
            a[idx[u], j] = 1
            a[idx[v], j] = 1
    return gf_matroid(GFMatrix(2, a, tuple(labels)))


def complete_graph(n: int) -> Matroid:
    return graphic(list(itertools.combinations(range(n), 2)))


_PROJECTIVE_CAP = {2: 4, 3: 3, 5: 2, 7: 2}


def projective_matrix(rank: int, p: int) -> GFMatrix:
    if rank > _PROJECTIVE_CAP.get(p, 0):
        raise SizeCapExceeded(f"projective geometry of rank {rank} over GF({p}) is too large")
    cols = []
    for v in itertools.product(range(p), repeat=rank):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            cols.append(v)
    cols.sort(key=lambda v: v[::-1])
    labels = tuple("".join(str(x) for x in v) for v in cols)
    a = np.array(cols, dtype=np.int64).T.reshape(rank, len(cols))
    return GFMatrix(p, a, labels)


def projective(rank: int, p: int) -> Matroid:
    """PG(rank-1, p): all points of the projective space as a column matroid."""
    return gf_matroid(projective_matrix(rank, p))


def fano() -> Matroid:
    return projective(3, 2)


# small named matroids -------------------------------------------------

_WHIRL3 = {"s0": "e", "s1": "g", "s2": "d", "r0": "f", "r1": "c'", "r2": "c"}


def wheel_whirl(n: int, whirl: bool = False) -> Matroid:
    """Rank-n wheel, or the whirl obtained by relaxing its rim.

    Spoke s_i joins the hub to rim vertex i; rim edge r_i joins rim vertices
    i and i+1.  For n = 3 the elements are renamed so that the three
    triangles are {e,f,g}, {c',d,g} and {c,d,e} and the rim is {c,c',f}.
    """
    if n < 2:
        raise ValueError("wheels need n >= 2")
    edges, labels = [], []
    for i in range(n):
        edges.append(("h", i))
        labels.append(f"s{i}")
    for i in range(n):
        edges.append((i, (i + 1) % n))
        labels.append(f"r{i}")
    m = graphic(edges, labels)
    if whirl:
        rim = m.mask([f"r{i}" for i in range(n)])
        t = m.table.copy()
        t[rim] += 1
        m = Matroid(m.labels, t, check=False)
    if n == 3:
        m = m.relabel(_WHIRL3)
    return m


VAMOS_LABELS = ("a", "a'", "b", "b'", "c", "c'", "d", "d'")


def vamos() -> Matroid:
    """V8: rank 4 on {a,a',...,d,d'}; the five sets {x,x',y,y'} with
    {x,y} not {a,d} are its only proper nonempty cyclic flats."""
    pairs = {"a": ("a", "a'"), "b": ("b", "b'"), "c": ("c", "c'"), "d": ("d", "d'")}
    bad = {frozenset(pairs[x] + pairs[y]) for x, y in
           (("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d"))}
    bases = [s for s in itertools.combinations(VAMOS_LABELS, 4) if frozenset(s) not in bad]
    return from_bases(VAMOS_LABELS, bases)


def vamos_by_cyclic_flats() -> Matroid:
    pairs = {"a": ("a", "a'"), "b": ("b", "b'"), "c": ("c", "c'"), "d": ("d", "d'")}
    z = [((), 0), (VAMOS_LABELS, 4)]
    for x, y in (("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")):
        z.append((pairs[x] + pairs[y], 3))
    return from_cyclic_flats(VAMOS_LABELS, z)


def whirl3_by_cyclic_flats() -> Matroid:
    E = ("c", "c'", "d", "e", "f", "g")
    return from_cyclic_flats(E, [((), 0), (("e", "f", "g"), 2), (("c'", "d", "g"), 2),
                                 (("c", "d", "e"), 2), (E, 3)])


def truncated_triple_pair() -> Matroid:
    """The truncation of U_{1,2} + U_{1,2} + U_{1,2}."""
    from .kernel import direct_sum
    m = direct_sum(direct_sum(uniform(1, ["a", "a'"]), uniform(1, ["b", "b'"])),
                   uniform(1, ["c", "c'"]))
    return truncate(m, 1)


# representations over GF(p) -------------------------------------------

def _greedy_basis(m: Matroid, order) -> list:
    """Lexicographically first basis of m restricted to ``order``."""
    chosen, mask, r = [], 0, 0
    for x in order:
        nm = mask | m.mask(x)
        if int(m.table[nm]) > r:
            chosen.append(x)
            mask, r = nm, r + 1
    return chosen


def find_representation(m: Matroid, p: int, limit: int = 1 << 16) -> GFMatrix:
    """A GF(p) matrix whose column matroid is m.

    Starts from the standard form [I | D] on the first basis, where the
    support of D is fixed by the fundamental circuits.  Entries on a
    spanning forest of the support are scaled to 1; the rest are searched
    column by column, checking the rank table of each prefix."""
    basis = _greedy_basis(m, m.labels)
    k = len(basis)
    rest = [x for x in m.labels if x not in basis]
    order = basis + rest
    bmask = m.mask(basis)
    support = np.zeros((k, len(rest)), dtype=bool)
    for j, x in enumerate(rest):
        xm = m.mask(x)
        if m.table[xm] == 0:
            continue
        for i, b in enumerate(basis):
            # b lies in the fundamental circuit of x iff swapping them keeps a basis
            swapped = (bmask & ~m.mask(b)) | xm
            support[i, j] = int(m.table[swapped]) == k
    # a spanning forest of the row/column support graph can be scaled to ones
    fixed = np.zeros_like(support)
    parent = list(range(k + len(rest)))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for j in range(len(rest)):
        for i in range(k):
            if support[i, j]:
                ri, rj = find(i), find(k + j)
                if ri != rj:
                    parent[ri] = rj
                    fixed[i, j] = True
    a = np.zeros((k, m.n), dtype=np.int64)
    a[:, :k] = np.eye(k, dtype=np.int64)
    a[:, k:] = support.astype(np.int64)
    free = [[i for i in range(k) if support[i, j] and not fixed[i, j]] for j in range(len(rest))]
    target = m.reorder(order)
    budget = [limit]

    def fits(upto: int) -> bool:
        sub = order[:upto]
        return np.array_equal(column_rank_of(a[:, :upto], p), target.restrict(sub).table)

    def go(j: int) -> bool:
        if j == len(rest):
            return True
        cells = free[j]
        for vals in itertools.product(range(1, p), repeat=len(cells)):
            budget[0] -= 1
            if budget[0] < 0:
                raise NotRepresentable(f"search budget exhausted over GF({p})")
            for i, v in zip(cells, vals):
                a[i, k + j] = v
            if fits(k + j + 1) and go(j + 1):
                return True
        return False

    if not fits(k) or not go(0):
        raise NotRepresentable(f"matroid is not representable over GF({p})")
    return GFMatrix(p, a, tuple(order)).columns(m.labels)


def column_rank_of(a: np.ndarray, p: int) -> np.ndarray:
    if a.shape[0] == 0:
        return np.zeros(1 << a.shape[1], dtype=np.int8)
    return column_rank_table(a, p)


def _nonzero_rows(a: np.ndarray) -> np.ndarray:
    return a[np.any(a != 0, axis=1)]


def _column_scaling(T: np.ndarray, Tp: np.ndarray, piv: list, p: int):
    """Nonzero d with T[i,j] d_piv[i] = Tp[i,j] d_j for every entry, where
    T and Tp are in reduced row echelon form with the same pivots."""
    rows, cols = T.shape
    if not np.array_equal(T != 0, Tp != 0):
        return None
    links = [[] for _ in range(cols)]      # (other column, factor: d_other = factor * d_this)
    for i in range(rows):
        pc = piv[i]
        for j in np.flatnonzero(T[i]).tolist():
            if j != pc:
                ratio = int(T[i, j]) * _inv(int(Tp[i, j]), p) % p
                links[pc].append((j, ratio))
                links[j].append((pc, _inv(ratio, p)))
    d = [0] * cols
    for start in range(cols):
        if d[start]:
            continue
        d[start] = 1
        stack = [start]
        while stack:
            c = stack.pop()
            for o, f in links[c]:
                if not d[o]:
                    d[o] = f * d[c] % p
                    stack.append(o)
    for i in range(rows):
        for j in np.flatnonzero(T[i]).tolist():
            if int(T[i, j]) * d[piv[i]] % p != int(Tp[i, j]) * d[j] % p:
                return None
    return np.array(d, dtype=np.int64)


def _inv(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def splice_representation(pair, p: int, W=None, M_rep: GFMatrix | None = None,
                          N_rep: GFMatrix | None = None) -> GFMatrix:
    """A GF(p) matrix representing a splice of a matched pair.

    M is brought to the form [I_k R S; 0 0 T] with X a basis of M|(A-B);
    then N is brought to [T U; 0 V] with the same T, by row operations and
    column scaling on the common columns; the result is
    [I_k R S W; 0 0 T U; 0 0 0 V] on columns X, (A-B)-X, A&B, B-A.
    Representations default to ones found by search."""
    from .splice import _pair
    pr = _pair(pair)
    M, N = pr.M, pr.N
    if p not in (2, 3):
        raise ValueError("splice representations are built over GF(2) or GF(3)")
    M_rep = M_rep if M_rep is not None else find_representation(M, p)
    N_rep = N_rep if N_rep is not None else find_representation(N, p)
    if M_rep.p != p or N_rep.p != p:
        raise NotRepresentable("representations are over a different field")
    if gf_matroid(M_rep).reorder(M.labels) != M or gf_matroid(N_rep).reorder(N.labels) != N:
        raise NotRepresentable("supplied matrix does not represent its matroid")
    AmB = [x for x in M.labels if x not in N._index]
    AB = [x for x in M.labels if x in N._index]
    BmA = [x for x in N.labels if x not in M._index]
    X = _greedy_basis(M, AmB)
    R = [x for x in AmB if x not in X]
    k = len(X)
    red, _ = rref(M_rep.columns(X + R + AB).entries, p)
    red = _nonzero_rows(red)
    top = red[:k]
    Tm = red[k:, k + len(R):]
    t = Tm.shape[0]
    red_n, piv_n = rref(N_rep.columns(AB + BmA).entries, p)
    red_n = _nonzero_rows(red_n)
    if sum(1 for c in piv_n if c < len(AB)) != t:
        raise NotMatched("N", "rank of the common part differs between M and N")
    Tp, U, V = red_n[:t, :len(AB)], red_n[:t, len(AB):], red_n[t:, len(AB):]
    Tr, piv_t = rref(Tm, p) if t else (Tm, [])
    if list(piv_t) != list(piv_n[:t]):
        raise NotRepresentable("common blocks have different pivot columns")
    d = _column_scaling(Tr, Tp, list(piv_t), p) if t else np.ones(len(AB), dtype=np.int64)
    if d is None:
        raise NotRepresentable("no column scaling aligns the common blocks")
    # Tm = G Tr with G = Tm[:, pivots]; Tr = Dp^-1 Tp D
    G = Tm[:, list(piv_t)] if t else np.zeros((0, 0), dtype=np.int64)
    dinv = np.array([_inv(int(d[c]), p) for c in piv_t], dtype=np.int64)
    scaled = np.concatenate([Tp * d[None, :], U], axis=1) * dinv[:, None] % p
    n_top = G @ scaled % p
    if not np.array_equal(n_top[:, :len(AB)], Tm % p):
        raise NotRepresentable("alignment of the common blocks failed")
    nb = len(BmA)
    if W is None:
        Wm = np.zeros((k, nb), dtype=np.int64)
    else:
        Wm = np.asarray(W.entries if isinstance(W, GFMatrix) else W, dtype=np.int64) % p
        if Wm.shape != (k, nb):
            raise ValueError(f"W must have shape {(k, nb)}")
    rows = [np.concatenate([top, Wm], axis=1),
            np.concatenate([np.zeros((t, k + len(R)), dtype=np.int64), n_top], axis=1),
            np.concatenate([np.zeros((V.shape[0], k + len(R) + len(AB)), dtype=np.int64), V],
                           axis=1)]
    out = GFMatrix(p, np.concatenate(rows, axis=0), tuple(X + R + AB + BmA))
    L = gf_matroid(out)
    if L.restrict(M.labels).reorder(M.labels) != M or L.contract_to(N.labels).reorder(N.labels) != N:
        raise NotRepresentable("constructed matrix is not a splice")
    return out


# base orderability ----------------------------------------------------

def _perfect_matching(adj: list[list[int]], size: int) -> bool:
    match = [-1] * size

    def augment(u, seen):
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match[v] < 0 or augment(match[v], seen):
                    match[v] = u
                    return True
        return False

    return all(augment(u, [False] * size) for u in range(len(adj)))


def base_orderable(L: Matroid) -> bool:
    """For every pair of bases B, B' there is a bijection B -> B' pairing
    exchangeable elements."""
    isb = L.family_array("bases")
    bases = L.bases()
    for i, b1 in enumerate(bases):
        e1 = B.bits(b1)
        for b2 in bases[i + 1:]:
            e2 = B.bits(b2)
            adj = [[j for j, y in enumerate(e2)
                    if isb[(b1 & ~(1 << x)) | (1 << y)] and isb[(b2 & ~(1 << y)) | (1 << x)]]
                   for x in e1]
            if not _perfect_matching(adj, len(e2)):
                return False
    return True


# Higgs factorizations of excluded minors --------------------------------

K4_HYPOTHESIS_CAP = 7


def verify_k4_hypothesis(G: Matroid) -> dict:
    """Every way of writing G as the Higgs lift L^j of a proper quotient G1
    towards a proper lift G2, and whether each has j = 1 with G1 the
    principal truncation and G2 the principal lift at a common element a
    that is the only loop of G1 and the only isthmus of G2."""
    from .higgs import higgs_lift, principal_lift, principal_truncation
    from .orders import all_lifts, all_quotients, is_quotient
    if G.n > K4_HYPOTHESIS_CAP:
        raise SizeCapExceeded(f"verify_k4_hypothesis is limited to {K4_HYPOTHESIS_CAP} elements")
    quotients = all_quotients(G)
    lifts = all_lifts(G)
    tG = G.table.astype(np.int16)
    # G = min(G2, G1 + j) exactly when no set has both values above r_G
    off1 = np.array([np.packbits(tG != q.table.astype(np.int16) + (G.r - q.r)) for q in quotients])
    off2 = np.array([np.packbits(tG != l.table) for l in lifts])
    special = {}
    for a in G.labels:
        am = G.mask(a)
        special[a] = (principal_truncation(G, [a], 1), principal_lift(G, [a], 1), am)
    found = []
    for qi, G1 in enumerate(quotients):
        clash = np.any(off1[qi][None, :] & off2, axis=1) if len(lifts) else np.zeros(0, bool)
        for li in np.flatnonzero(~clash).tolist():
            G2 = lifts[li]
            if not is_quotient(G1, G2):
                continue
            j = G.r - G1.r
            if higgs_lift(G2, G1, j, check=False) != G:
                continue
            element = None
            if j == 1:
                for a, (Ga, Ga_up, am) in special.items():
                    if G1 == Ga and G2 == Ga_up and G1.loops() == am and G2.isthmuses() == am:
                        element = a
                        break
            found.append({"j": j, "quotient": G1, "lift": G2, "element": element})
    return {
        "quotients": len(quotients),
        "lifts": len(lifts),
        "factorizations": found,
        "satisfied": all(f["element"] is not None for f in found),
    }


# rank-2 minors --------------------------------------------------------

def line_minor_size(L: Matroid) -> int:
    """Largest number of points in a rank-2 contraction L/C, C independent."""
    if L.r < 2:
        return 0
    cl = L.closure_array()
    t = L.table
    best = 0
    for C in B.submasks(L.full):
        if B.popcount(C) != L.r - 2 or t[C] != L.r - 2:
            continue
        rc = int(t[C])
        pts = {int(cl[C | (1 << e)]) for e in B.bits(L.full & ~C) if t[C | (1 << e)] > rc}
        best = max(best, len(pts))
    return best


def has_uniform_line_minor(L: Matroid, k: int) -> bool:
    """Whether L has a U_{2,k} minor, found as a rank-2 contraction whose
    simplification has at least k points."""
    return line_minor_size(L) >= k


def line_pencil_pair(p: int = 2, a: str | None = None, x: str = "x"):
    """(M, N) with M = PG(2, p) on A, a point a, and N the rank-2 matroid on
    (A - a) + x whose points are x and the sets l - a for lines l through a."""
    M = projective(3, p)
    a = M.labels[0] if a is None else a
    am = M.mask(a)
    others = [y for y in M.labels if y != a]
    point = {y: int(M.closure(am | M.mask(y))) for y in others}
    point[x] = -1
    labels = others + [x]
    n = len(labels)
    t = np.zeros(1 << n, dtype=np.int8)
    for S in range(1, 1 << n):
        t[S] = min(2, len({point[labels[b]] for b in B.bits(S)}))
    return M, Matroid(labels, t)


# parallel connections -------------------------------------------------

def _glue(M: Matroid, N: Matroid, common: dict, tag: str) -> Matroid:
    """Generalized parallel connection of M with a copy of N whose element
    common[y] is identified with y of M; other labels of N get ``tag``."""
    from .splice import gpc
    rename = {y: common.get(y, f"{tag}{y}") for y in N.labels}
    return gpc(M, N.relabel(rename))


def gpc_irreducible_pairs() -> list[tuple[str, Matroid, Matroid]]:
    """Pairs of irreducible matroids with a modular common flat, as
    (name, M, N) with N already relabelled to share only that flat."""
    K4, F7 = complete_graph(4), fano()
    F7d = F7.dual()
    k4_tri = ["01", "02", "12"]
    f7_line = ["100", "010", "110"]

    def share(M, N, m_elems, n_elems, tag):
        rename = {y: f"{tag}{y}" for y in N.labels}
        rename.update(dict(zip(n_elems, m_elems)))
        return M, N.relabel(rename)

    out = []
    for (nm, M), (nn, N) in itertools.product(
            [("K4", K4), ("F7", F7), ("F7*", F7d)], repeat=2):
        out.append((f"{nm}+{nn} at a point", *share(M, N, [M.labels[0]], [N.labels[0]], "n")))
    out.append(("F7+F7 at a line", *share(F7, F7, f7_line, f7_line, "n")))
    out.append(("F7+K4 at a line", *share(F7, K4, f7_line, k4_tri, "n")))
    out.append(("K4+K4 at a triangle", *share(K4, K4, k4_tri, k4_tri, "n")))
    out.append(("K4+F7 at a line", *share(K4, F7, k4_tri, f7_line, "n")))
    return out


def parallel_connection_example():
    """U_{2,3} on {a, b, p} with copies of M(K4) attached at a and at b,
    giving the reducible rank-6 matroid M; N is a copy of M sharing only p.
    Returns (M, N, P) with P the parallel connection of M and N at p."""
    from .splice import gpc
    base = uniform(2, ["a", "b", "p"])
    K4 = complete_graph(4)
    M = _glue(base, K4, {K4.labels[0]: "a"}, "x")
    M = _glue(M, K4, {K4.labels[0]: "b"}, "y")
    N = M.relabel({y: y if y == "p" else f"{y}'" for y in M.labels})
    return M, N, gpc(M, N)
