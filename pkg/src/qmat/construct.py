"""Constructions: uniform q-matroids, submodular functions, union, intersection, direct sum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qmat import kernels
from qmat.core import QMatroid, contract, derive_families, dual, is_isomorphic, restrict
from qmat.errors import FlagsMissing, MixedFields, MixedLattices, OutOfRange
from qmat.gf import FieldSpec
from qmat.lattice import Subspace, SubspaceLattice, enumerate_lattice, rref


def uniform(k: int, n: int, field: FieldSpec) -> QMatroid:
    """U_{k,n}: rank(A) = min(k, dim A)."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")
    L = enumerate_lattice(field, n)
    return QMatroid(L, np.minimum(L.dims, k), name=f"U{k}{n}")


# -- submodular functions -------------------------------------------------

class SubmodularFn:
    """An integer table on a lattice with its properties checked up front."""

    FLAGS = ("nonneg", "increasing", "submodular", "zero_at_zero")

    def __init__(self, lattice: SubspaceLattice, values):
        values = np.array(values, dtype=np.int64)
        if values.shape != (len(lattice),):
            raise OutOfRange(f"table has {values.size} entries, lattice has {len(lattice)}")
        values.setflags(write=False)
        self.lattice = lattice
        self.values = values
        leq = lattice.leq
        self.nonneg = bool((values >= 0).all())
        self.increasing = not bool((leq & (values[:, None] > values[None, :])).any())
        self.submodular = not kernels.r3_violations(
            values, lattice.join_table, lattice.meet_table, 1
        )
        self.zero_at_zero = int(values[0]) == 0

    @property
    def flags(self) -> dict:
        return {k: getattr(self, k) for k in self.FLAGS}

    def require(self, *names):
        missing = [k for k in names if not getattr(self, k)]
        if missing:
            raise FlagsMissing(f"function is not {', '.join(missing)}")


def circuits_from_submodular(f: SubmodularFn) -> list[int]:
    """Minimal nonzero spaces C with f(C) < dim C."""
    f.require("increasing", "submodular")
    L = f.lattice
    small = f.values < L.dims
    small[0] = False
    return [
        int(c)
        for c in np.flatnonzero(small)
        if not any(small[b] for b in L.below(c) if b != c)
    ]


def matroid_from_submodular(f: SubmodularFn) -> QMatroid:
    """rank(A) = min over X ⊆ A of f(X) + dim A - dim X."""
    f.require("nonneg", "increasing", "submodular", "zero_at_zero")
    L = f.lattice
    ptr, idx = L.down_csr
    return QMatroid(L, kernels.down_min(f.values, L.dims, ptr, idx))


def rank_min_over_all(f: SubmodularFn) -> np.ndarray:
    """min over every X ⊆ E of f(X) + dim A - dim(A ∩ X); a brute-force cross-check."""
    L = f.lattice
    dims = L.dims
    totals = f.values[None, :] + dims[:, None] - dims[L.meet_table]
    return totals.min(axis=1)


# -- union and intersection ----------------------------------------------

def _same_lattice(M1: QMatroid, M2: QMatroid):
    if M1.field != M2.field:
        raise MixedFields(f"{M1.field!r} vs {M2.field!r}")
    if not M1.same_lattice(M2):
        raise MixedLattices(f"operands live on F_{M1.q}^{M1.n} and F_{M2.q}^{M2.n}")


def union(M1: QMatroid, M2: QMatroid) -> QMatroid:
    """r(A) = min over X ⊆ A of r1(X) + r2(X) + dim A - dim X."""
    _same_lattice(M1, M2)
    L = M1.lattice
    ptr, idx = L.down_csr
    return QMatroid(L, kernels.down_min(M1.rank + M2.rank, L.dims, ptr, idx))


def decomposable_spaces(M1: QMatroid, M2: QMatroid) -> np.ndarray:
    """Mask of subspaces J with J = I1 ⊕ I2 for some independent I1 of M1 and I2 of M2."""
    _same_lattice(M1, M2)
    L = M1.lattice
    ind1 = np.flatnonzero(M1.rank == L.dims)
    ind2 = np.flatnonzero(M2.rank == L.dims)
    meets = L.meet_table[np.ix_(ind1, ind2)]
    joins = L.join_table[np.ix_(ind1, ind2)]
    out = np.zeros(len(L), dtype=bool)
    out[joins[meets == 0]] = True
    return out


def union_independents_oracle(M1: QMatroid, M2: QMatroid) -> list[int]:
    """Spaces I all of whose subspaces split as an M1-independent ⊕ an M2-independent."""
    L = M1.lattice
    bad = np.flatnonzero(~decomposable_spaces(M1, M2))
    if bad.size == 0:
        return list(range(len(L)))
    blocked = L.leq[bad].any(axis=0)
    return [int(i) for i in np.flatnonzero(~blocked)]


def intersection(M1: QMatroid, M2: QMatroid) -> QMatroid:
    """M1 ∧ M2, defined as the dual of the union of the duals."""
    _same_lattice(M1, M2)
    return dual(union(dual(M1), dual(M2)))


def intersection_spanning_oracle(M1: QMatroid, M2: QMatroid) -> list[int]:
    """Spaces S all of whose superspaces are S1 ∩ S2 with S_i spanning in M_i.

    The bare set of intersections need not be closed upwards: with both
    operands the mixed diamond on the same loop, 0 is an intersection but
    the loop is not.
    """
    _same_lattice(M1, M2)
    L = M1.lattice
    s1 = np.flatnonzero(M1.rank == M1.rank_of_E)
    s2 = np.flatnonzero(M2.rank == M2.rank_of_E)
    meets = np.zeros(len(L), dtype=bool)
    meets[L.meet_table[np.ix_(s1, s2)].ravel()] = True
    bad = np.flatnonzero(~meets)
    if bad.size == 0:
        return list(range(len(L)))
    blocked = L.leq[:, bad].any(axis=1)
    return [int(i) for i in np.flatnonzero(~blocked)]


# -- loops and the direct sum --------------------------------------------

def add_loop(M: QMatroid, at: int | None = None) -> QMatroid:
    """Add a new coordinate axis ℓ as a loop.

    ``at`` is the position of the new coordinate (default: last).  The rank
    of A' is the rank in M of the projection of A' that forgets ℓ.
    """
    n = M.n
    at = n if at is None else at
    if not 0 <= at <= n:
        raise OutOfRange(f"loop position {at} outside 0..{n}")
    f = M.field
    big = enumerate_lattice(f, n + 1)
    index_of = M.lattice.index_of
    ranks = np.empty(len(big), dtype=np.int64)
    for i, s in enumerate(big.spaces):
        proj = [row[:at] + row[at + 1 :] for row in s.rows]
        ranks[i] = M.rank[index_of[rref(proj, f, n)]]
    return QMatroid(big, ranks)


def coordinate_space(lattice: SubspaceLattice, coords) -> int:
    """Index of the span of the unit vectors e_i, i in coords."""
    n = lattice.n
    rows = [tuple(int(j == i) for j in range(n)) for i in coords]
    return lattice.span_index(rows)


@dataclass
class DirectSumContext:
    M1: QMatroid
    M2: QMatroid
    lattice: SubspaceLattice
    E1: int
    E2: int
    M1_ext: QMatroid
    M2_ext: QMatroid

    @property
    def n1(self) -> int:
        return self.M1.n

    @property
    def n2(self) -> int:
        return self.M2.n

    def split(self, a1: int, a2: int) -> int:
        """Index of A1 ⊕ A2, with A1 in M1's lattice and A2 in M2's."""
        n1, n2 = self.n1, self.n2
        rows = [tuple(r) + (0,) * n2 for r in self.M1.lattice.spaces[a1].rows]
        rows += [(0,) * n1 + tuple(r) for r in self.M2.lattice.spaces[a2].rows]
        return self.lattice.span_index(rows)


def direct_sum_context(M1: QMatroid, M2: QMatroid) -> DirectSumContext:
    """Put M1 on the first n1 coordinates and M2 on the last n2, padding with loops."""
    if M1.field != M2.field:
        raise MixedFields(f"{M1.field!r} vs {M2.field!r}")
    n1, n2 = M1.n, M2.n
    ext1 = M1
    for _ in range(n2):
        ext1 = add_loop(ext1)
    ext2 = M2
    for _ in range(n1):
        ext2 = add_loop(ext2, at=0)
    L = enumerate_lattice(M1.field, n1 + n2)
    return DirectSumContext(
        M1, M2, L,
        coordinate_space(L, range(n1)),
        coordinate_space(L, range(n1, n1 + n2)),
        QMatroid(L, ext1.rank), QMatroid(L, ext2.rank),
    )


def direct_sum(M1: QMatroid, M2: QMatroid) -> QMatroid:
    """M1 ⊕ M2 as the union of the two loop-padded q-matroids."""
    ctx = direct_sum_context(M1, M2)
    return union(ctx.M1_ext, ctx.M2_ext)


def direct_sum_many(*Ms: QMatroid) -> QMatroid:
    """Left-nested pairwise sum ((M1 ⊕ M2) ⊕ M3) ⊕ ..."""
    out = Ms[0]
    for M in Ms[1:]:
        out = direct_sum(out, M)
    return out


def has_sum_minors(M: QMatroid, M1: QMatroid, M2: QMatroid) -> bool:
    """M|E1 ≅ M/E2 ≅ M1 and M|E2 ≅ M/E1 ≅ M2 for the coordinate split of M."""
    if M.n != M1.n + M2.n:
        return False
    L = M.lattice
    E1 = coordinate_space(L, range(M1.n))
    E2 = coordinate_space(L, range(M1.n, M.n))
    checks = [
        (restrict(M, E1), M1),
        (contract(M, E2), M1),
        (restrict(M, E2), M2),
        (contract(M, E1), M2),
    ]
    return all(is_isomorphic(a, b) is not None for a, b in checks)


def loop_space_of_sum(ctx: DirectSumContext) -> Subspace:
    """The join of the embedded summand loopspaces."""
    l1 = derive_families(ctx.M1).loopspace
    l2 = derive_families(ctx.M2).loopspace
    n1, n2 = ctx.n1, ctx.n2
    rows = [tuple(r) + (0,) * n2 for r in l1.rows] + [(0,) * n1 + tuple(r) for r in l2.rows]
    return rref(rows, ctx.lattice.field, n1 + n2)
