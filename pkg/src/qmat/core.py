"""q-matroids as rank tables over an enumerated subspace lattice."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from qmat import kernels
from qmat.errors import (
    AxiomsFailed,
    MixedFields,
    MixedLattices,
    SearchCapExceeded,
    SubspaceNotInLattice,
    TableSizeMismatch,
)
from qmat.lattice import (
    LatticeIso,
    Subspace,
    SubspaceLattice,
    enumerate_lattice,
    gl_order,
    rref,
    vec_mat,
)

ISO_SEARCH_CAP = 10**7
_BIG = 1 << 40


class QMatroid:
    """A rank table indexed by the subspaces of a lattice.

    ``rank[i]`` is the rank of ``lattice[i]``.  The table is read-only; every
    operation builds a new QMatroid.
    """

    def __init__(self, lattice: SubspaceLattice, rank, name: str | None = None):
        rank = np.array(rank, dtype=np.int64)
        if rank.shape != (len(lattice),):
            raise TableSizeMismatch(f"rank table has {rank.size} entries, lattice has {len(lattice)}")
        rank.setflags(write=False)
        self.lattice = lattice
        self.rank = rank
        self.name = name

    @classmethod
    def from_function(cls, lattice: SubspaceLattice, fn, name=None) -> "QMatroid":
        return cls(lattice, [fn(s) for s in lattice.spaces], name)

    @classmethod
    def from_circuits(cls, lattice: SubspaceLattice, circuits: Iterable, name=None) -> "QMatroid":
        """Rank = largest dimension of a subspace of A containing no circuit."""
        idx = _as_indices(lattice, circuits)
        if idx:
            dependent = lattice.leq[idx].any(axis=0)
        else:
            dependent = np.zeros(len(lattice), dtype=bool)
        return cls(lattice, _rank_from_independent(lattice, ~dependent), name)

    @property
    def field(self):
        return self.lattice.field

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def q(self) -> int:
        return self.lattice.q

    @property
    def rank_of_E(self) -> int:
        return int(self.rank[-1])

    def r(self, A) -> int:
        """Rank of a subspace given as index, Subspace, text or rows."""
        if isinstance(A, (int, np.integer)):
            return int(self.rank[A])
        return int(self.rank[self.lattice.index(A)])

    def same_lattice(self, other: "QMatroid") -> bool:
        return self.lattice.same_as(other.lattice)

    def __eq__(self, other):
        if not isinstance(other, QMatroid):
            return NotImplemented
        return self.same_lattice(other) and np.array_equal(self.rank, other.rank)

    def __hash__(self):
        return hash((self.q, self.n, self.rank.tobytes()))

    def __repr__(self):
        tag = f"{self.name}, " if self.name else ""
        return f"QMatroid({tag}F_{self.q}^{self.n}, rank {self.rank_of_E})"

    def renamed(self, name: str) -> "QMatroid":
        return QMatroid(self.lattice, self.rank, name)

    def transformed(self, T: LatticeIso) -> "QMatroid":
        """The image T(M), whose rank at T(A) is the rank of A in M."""
        perm = T.permutation_of(self.lattice)
        new = np.empty_like(self.rank)
        new[perm] = self.rank
        return QMatroid(self.lattice, new)


def _as_indices(lattice: SubspaceLattice, items) -> list[int]:
    out = []
    for it in items:
        if isinstance(it, (int, np.integer)):
            out.append(int(it))
        else:
            out.append(lattice.index(it))
    return out


def _rank_from_independent(lattice: SubspaceLattice, independent: np.ndarray) -> np.ndarray:
    """rank(A) = max dim of an independent subspace of A."""
    values = np.where(independent, 0, _BIG).astype(np.int64)
    ptr, idx = lattice.down_csr
    return lattice.dims - kernels.down_min(values, lattice.dims, ptr, idx)


# -- axiom checks ---------------------------------------------------------

@dataclass
class AxiomReport:
    """Violations per axiom; each entry is a tuple of witnessing subspaces."""

    violations: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    @property
    def r1_violations(self):
        return self.violations.get("R1", [])

    @property
    def r2_violations(self):
        return self.violations.get("R2", [])

    @property
    def r3_violations(self):
        return self.violations.get("R3", [])

    def render(self, limit: int = 10) -> str:
        if self.ok:
            return "ok"
        lines = []
        for axiom, items in self.violations.items():
            if not items:
                continue
            lines.append(f"{axiom}: {len(items)} violation(s)")
            for w in items[:limit]:
                lines.append("  " + " ".join(str(s) for s in w))
        return "\n".join(lines)


def check_rank_axioms(M: QMatroid, limit: int = -1) -> AxiomReport:
    """Exhaustive (R1)-(R3) check; ``limit`` caps the R3 witnesses collected."""
    L = M.lattice
    r, dims = M.rank, L.dims
    spaces = L.spaces
    r1 = [(spaces[a],) for a in np.flatnonzero((r < 0) | (r > dims))]
    bad2 = L.leq & (r[:, None] > r[None, :])
    r2 = [(spaces[a], spaces[b]) for a, b in np.argwhere(bad2)]
    pairs = kernels.r3_violations(r, L.join_table, L.meet_table, limit)
    r3 = [(spaces[a], spaces[b]) for a, b in pairs]
    return AxiomReport({"R1": r1, "R2": r2, "R3": r3})


def is_qmatroid(M: QMatroid) -> bool:
    return check_rank_axioms(M, limit=1).ok


def require_valid(M: QMatroid) -> None:
    report = check_rank_axioms(M, limit=10)
    if not report.ok:
        raise AxiomsFailed("rank table violates the q-matroid axioms", report)


def check_circuit_axioms(lattice: SubspaceLattice, circuits: Iterable) -> AxiomReport:
    """(C1) no zero space, (C2) an antichain, (C3) circuit elimination at every hyperplane."""
    idx = sorted(set(_as_indices(lattice, circuits)))
    spaces = lattice.spaces
    c1 = [(spaces[0],)] if 0 in idx else []
    c2 = [
        (spaces[a], spaces[b])
        for a, b in itertools.permutations(idx, 2)
        if lattice.leq[a, b]
    ]
    contains = lattice.leq[idx].any(axis=0) if idx else np.zeros(len(lattice), dtype=bool)
    coatoms = lattice.dim_buckets[lattice.n - 1] if lattice.n >= 1 else []
    c3 = []
    for a, b in itertools.combinations(idx, 2):
        s = lattice.join_table[a, b]
        for x in coatoms:
            if not contains[lattice.meet_table[s, x]]:
                c3.append((spaces[a], spaces[b], spaces[x]))
    return AxiomReport({"C1": c1, "C2": c2, "C3": c3})


# -- derived families -----------------------------------------------------

@dataclass
class DerivedFamilies:
    lattice: SubspaceLattice
    independent: list
    bases: list
    circuits: list
    flats: list
    hyperplanes: list
    spanning: list
    cocircuits: list
    loops: list
    loopspace: Subspace

    def texts(self, family: str) -> list[str]:
        return [self.lattice.label(i) for i in getattr(self, family)]


def derive_families(M: QMatroid) -> DerivedFamilies:
    require_valid(M)
    L = M.lattice
    r, dims = M.rank, L.dims
    rE = M.rank_of_E
    indep = r == dims
    circuits = [
        a for a in np.flatnonzero(~indep) if all(indep[b] for b in L.lower_covers[a])
    ]
    bases = [a for a in np.flatnonzero(indep) if not any(indep[b] for b in L.upper_covers[a])]
    is_flat = np.array(
        [all(r[b] > r[a] for b in L.upper_covers[a]) for a in range(len(L))], dtype=bool
    )
    proper_flats = [a for a in np.flatnonzero(is_flat) if a != L.top]
    hyperplanes = [
        a for a in proper_flats if not any(b != a and L.leq[a, b] for b in proper_flats)
    ]
    loops = [int(p) for p in L.points if r[p] == 0]
    ls = 0
    for p in loops:
        ls = L.join_table[ls, p]
    return DerivedFamilies(
        lattice=L,
        independent=[int(a) for a in np.flatnonzero(indep)],
        bases=[int(a) for a in bases],
        circuits=[int(a) for a in circuits],
        flats=[int(a) for a in np.flatnonzero(is_flat)],
        hyperplanes=[int(a) for a in hyperplanes],
        spanning=[int(a) for a in np.flatnonzero(r == rE)],
        cocircuits=sorted(int(L.perp_table[h]) for h in hyperplanes),
        loops=loops,
        loopspace=L.spaces[int(ls)],
    )


# -- duality and minors ---------------------------------------------------

def dual(M: QMatroid) -> QMatroid:
    """r*(A) = dim A - r(E) + r(A^⊥) for the standard dot product."""
    L = M.lattice
    return QMatroid(L, L.dims - M.rank_of_E + M.rank[L.perp_table])


def _resolve(M: QMatroid, X) -> int:
    if isinstance(X, (int, np.integer)):
        if not 0 <= X < len(M.lattice):
            raise SubspaceNotInLattice(f"index {X} out of range")
        return int(X)
    if isinstance(X, Subspace) and (X.n != M.n or X not in M.lattice.index_of):
        raise SubspaceNotInLattice(f"{X} is not in {M.lattice!r}")
    return M.lattice.index(X)


def restrict(M: QMatroid, X) -> QMatroid:
    """M|X on a fresh F_q^dim(X); coordinate i maps to the i-th RREF row of X."""
    x = _resolve(M, X)
    Xs = M.lattice.spaces[x]
    sub = enumerate_lattice(M.field, Xs.dim)
    f = M.field
    ranks = []
    for s in sub.spaces:
        image = [vec_mat(row, Xs.rows, f) for row in s.rows]
        ranks.append(M.rank[M.lattice.index_of[rref(image, f, M.n)]])
    return QMatroid(sub, ranks)


def quotient_coordinates(X: Subspace, field) -> tuple[list[int], callable]:
    """Free columns of X's RREF and the lift map F^(n-k) -> F^n used by contraction."""
    piv = set(X.pivots)
    free = [j for j in range(X.n) if j not in piv]

    def lift(u):
        v = [0] * X.n
        for j, x in zip(free, u):
            v[j] = x
        return v

    return free, lift


def contract(M: QMatroid, X) -> QMatroid:
    """M/X on F_q^(n - dim X), coordinatised by the non-pivot columns of X."""
    x = _resolve(M, X)
    Xs = M.lattice.spaces[x]
    f = M.field
    sub = enumerate_lattice(f, M.n - Xs.dim)
    _, lift = quotient_coordinates(Xs, f)
    rX = M.rank[x]
    ranks = []
    for s in sub.spaces:
        rows = [lift(u) for u in s.rows] + [list(r) for r in Xs.rows]
        ranks.append(M.rank[M.lattice.index_of[rref(rows, f, M.n)]] - rX)
    return QMatroid(sub, ranks)


# -- bicolouring ----------------------------------------------------------

@dataclass
class Bicolouring:
    edges: list  # (lower index, upper index)
    colours: list  # "red" or "green"

    def colour(self, a: int, b: int) -> str:
        return dict(zip(self.edges, self.colours))[(a, b)]


def bicolour(M: QMatroid) -> Bicolouring:
    edges = M.lattice.cover_edges
    colours = ["red" if M.rank[b] > M.rank[a] else "green" for a, b in edges]
    return Bicolouring(edges, colours)


def maximal_chains(lattice: SubspaceLattice):
    """Every maximal chain 0 = A_0 ⋖ ... ⋖ A_n = E, as index tuples."""

    def walk(a, chain):
        if a == lattice.top:
            yield tuple(chain)
            return
        for b in lattice.upper_covers[a]:
            chain.append(int(b))
            yield from walk(int(b), chain)
            chain.pop()

    yield from walk(0, [0])


# -- isomorphism ----------------------------------------------------------

def rank_signature(M: QMatroid) -> tuple:
    """Per-dimension histogram of rank values; equal for isomorphic q-matroids."""
    dims = M.lattice.dims
    return tuple(sorted(Counter(zip(dims.tolist(), M.rank.tolist())).items()))


def _point_invariants(M: QMatroid) -> dict:
    """For each point: histogram of (dim, rank) over the subspaces containing it."""
    L = M.lattice
    out = {}
    dims, r = L.dims, M.rank
    for p in L.points:
        above = L.leq[p]
        key = (int(r[p]),) + tuple(sorted(Counter(zip(dims[above].tolist(), r[above].tolist())).items()))
        out[int(p)] = key
    return out


def _normalize(v, field):
    lead = next((x for x in v if x), 0)
    if lead in (0, 1):
        return tuple(v)
    inv = field.inv(lead)
    return tuple(field.mul(inv, x) for x in v)


def iso_candidates(M1: QMatroid, M2: QMatroid, cap: int = ISO_SEARCH_CAP, first_only=True):
    """Yield matrices T with r1(A) = r2(A T) for every A.

    Backtracks over the images w_1..w_n of the unit vectors.  After choosing
    w_k every subspace inside <e_1..e_k> (and not inside <e_1..e_{k-1}>) has a
    determined image, and its rank is compared immediately.
    """
    L = M1.lattice
    f = L.field
    n, q = L.n, L.q
    if gl_order(n, q) > cap:
        raise SearchCapExceeded(f"|GL({n},{q})| = {gl_order(n, q)} exceeds the cap {cap}")
    if n == 0:
        yield ()
        return
    points = [int(p) for p in L.points]
    pvec = {p: L.spaces[p].rows[0] for p in points}
    bit_of_vec = {pvec[p]: b for b, p in enumerate(points)}
    by_mask = {m: i for i, m in enumerate(L.point_masks)}
    masks = L.point_masks

    def level(vec):
        return max(j for j, x in enumerate(vec) if x) + 1

    new_points = [[] for _ in range(n + 1)]
    for b, p in enumerate(points):
        new_points[level(pvec[p])].append((b, pvec[p]))
    new_spaces = [[] for _ in range(n + 1)]
    for i, s in enumerate(L.spaces):
        if s.dim:
            k = max(level(row) for row in s.rows)
            bits = [b for b in range(len(points)) if masks[i] >> b & 1]
            new_spaces[k].append((i, bits))
    inv1 = _point_invariants(M1)
    inv2 = _point_invariants(M2)
    r1, r2 = M1.rank, M2.rank
    all_vectors = [v for v in itertools.product(range(q), repeat=n) if any(v)]
    unit_point = [L.index_of[Subspace(n, (tuple(int(i == j) for j in range(n)),))] for i in range(n)]

    images = [None] * n
    img_bit = [0] * len(points)

    def extend(k):
        # choose w_k (1-based level k, stored at images[k-1])
        target = inv1[unit_point[k - 1]]
        span_rows = [w for w in images[: k - 1]]
        unit = tuple(int(j == k - 1) for j in range(n))
        for w in itertools.chain([unit], (v for v in all_vectors if v != unit)):
            if k == 1 and _normalize(w, f) != w:
                continue
            pw = points[bit_of_vec[_normalize(w, f)]]
            if inv2[pw] != target:
                continue
            if span_rows and len(rref(span_rows + [w], f, n).rows) < k:
                continue
            images[k - 1] = w
            for b, v in new_points[k]:
                img = vec_mat(v[:k], images[:k], f)
                img_bit[b] = bit_of_vec[_normalize(img, f)]
            ok = True
            for i, bits in new_spaces[k]:
                m = 0
                for b in bits:
                    m |= 1 << img_bit[b]
                if r1[i] != r2[by_mask[m]]:
                    ok = False
                    break
            if not ok:
                continue
            if k == n:
                yield tuple(images)
            else:
                yield from extend(k + 1)

    yield from extend(1)


def is_isomorphic(M1: QMatroid, M2: QMatroid, cap: int = ISO_SEARCH_CAP) -> LatticeIso | None:
    """A matrix T in GL(n, q) with r1(A) = r2(T(A)) for all A, or None."""
    if M1.field != M2.field:
        raise MixedFields(f"{M1.field!r} vs {M2.field!r}")
    if M1.n != M2.n:
        return None
    if rank_signature(M1) != rank_signature(M2):
        return None
    for rows in iso_candidates(M1, M2, cap):
        T = LatticeIso(rows, M1.field) if rows else LatticeIso([], M1.field)
        return T
    return None


def isomorphic(M1: QMatroid, M2: QMatroid) -> bool:
    return is_isomorphic(M1, M2) is not None


def all_red_above(M: QMatroid) -> list[int]:
    """Subspaces A with r(E) - r(A) = dim E - dim A (an up-set [H, E])."""
    L = M.lattice
    return [int(a) for a in np.flatnonzero(M.rank_of_E - M.rank == L.n - L.dims)]
