"""The subspace lattice of F_q^n.

Every subspace is stored as its reduced row echelon basis, so equal
subspaces have identical ``Subspace`` values.  A ``SubspaceLattice`` lists
all subspaces ordered by (dimension, basis rows) and precomputes the integer
tables the q-matroid code runs on: meets, joins, orthogonal complements,
containment and covers, all keyed by lattice index.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from qmat.errors import (
    ColumnCountMismatch,
    LatticeTooLarge,
    MixedLattices,
    NotNested,
    OutOfRange,
    ParseError,
    SingularMatrix,
    SubspaceNotInLattice,
)
from qmat.gf import FieldSpec, _DIGITS, field_of_order

DEFAULT_LATTICE_CAP = 10**7


def lattice_cap() -> int:
    return int(os.environ.get("QMAT_LATTICE_CAP", DEFAULT_LATTICE_CAP))


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace of F_q^n given by its canonical (RREF) basis rows."""

    n: int
    rows: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    def text(self) -> str:
        """Rows as digit strings joined by commas; the zero space is ``0``."""
        if not self.rows:
            return "0"
        return ",".join("".join(_DIGITS[x] for x in r) for r in self.rows)

    def __str__(self):
        return "<" + self.text() + ">"


# -- linear algebra over a FieldSpec ---------------------------------------

def _rref_rows(rows, field: FieldSpec, n: int):
    """Row-reduce a list of int rows in place order; returns the nonzero RREF rows."""
    mat = [list(r) for r in rows]
    add, mul, inv, neg = field.add, field.mul, field.inv, field.neg
    out = []
    pivot_row = 0
    nrows = len(mat)
    for col in range(n):
        pr = None
        for i in range(pivot_row, nrows):
            if mat[i][col]:
                pr = i
                break
        if pr is None:
            continue
        mat[pivot_row], mat[pr] = mat[pr], mat[pivot_row]
        row = mat[pivot_row]
        s = inv(row[col])
        if s != 1:
            row = [mul(s, x) for x in row]
            mat[pivot_row] = row
        for i in range(nrows):
            if i != pivot_row:
                c = mat[i][col]
                if c:
                    nc = neg(c)
                    mat[i] = [add(a, mul(nc, b)) for a, b in zip(mat[i], row)]
        pivot_row += 1
        if pivot_row == nrows:
            break
    for i in range(pivot_row):
        out.append(tuple(mat[i]))
    return out


def rref(rows: Sequence[Sequence[int]], field: FieldSpec, n: int | None = None) -> Subspace:
    """Canonical RREF basis of the row space; zero rows are dropped."""
    rows = [tuple(int(x) for x in r) for r in rows]
    if n is None:
        if not rows:
            raise ColumnCountMismatch("cannot infer the column count of an empty matrix")
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ColumnCountMismatch(f"expected rows of length {n}")
    return Subspace(n, tuple(_rref_rows(rows, field, n)))


def matrix_rank(rows: Sequence[Sequence[int]], field: FieldSpec) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(_rref_rows(rows, field, len(rows[0])))


def vec_mat(v, T, field: FieldSpec):
    """Row vector times matrix."""
    add, mul = field.add, field.mul
    out = [0] * len(T[0])
    for vi, row in zip(v, T):
        if vi:
            if vi == 1:
                out = [add(a, b) for a, b in zip(out, row)]
            else:
                out = [add(a, mul(vi, b)) for a, b in zip(out, row)]
    return tuple(out)


def mat_mul(A, B, field: FieldSpec):
    return [vec_mat(r, B, field) for r in A]


def span_vectors(A: Subspace, field: FieldSpec) -> Iterator[tuple]:
    """Every vector of the subspace, including zero."""
    for coeffs in itertools.product(range(field.q), repeat=A.dim):
        yield vec_mat(coeffs, A.rows, field) if A.rows else (0,) * A.n


def join(A: Subspace, B: Subspace, field: FieldSpec) -> Subspace:
    if A.n != B.n:
        raise MixedLattices("subspaces live in different ambient spaces")
    return rref(list(A.rows) + list(B.rows), field, A.n)


def meet(A: Subspace, B: Subspace, field: FieldSpec) -> Subspace:
    """Intersection by Zassenhaus elimination on [[A, A], [B, 0]]."""
    if A.n != B.n:
        raise MixedLattices("subspaces live in different ambient spaces")
    n = A.n
    rows = [r + r for r in A.rows] + [r + (0,) * n for r in B.rows]
    if not rows:
        return Subspace(n, ())
    red = _rref_rows(rows, field, 2 * n)
    inter = [r[n:] for r in red if not any(r[:n])]
    return rref(inter, field, n)


def perp(A: Subspace, field: FieldSpec) -> Subspace:
    """Orthogonal complement under the standard dot product sum x_i y_i."""
    n = A.n
    piv = A.pivots
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(A.rows, piv):
            v[pc] = field.neg(row[f])
        basis.append(v)
    return rref(basis, field, n)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def lattice_size(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def _rref_patterns(n: int, k: int, q: int):
    """All k x n RREF matrices with entries in range(q), by pivot pattern."""
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free = [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, n) if j not in pivset]
        for vals in itertools.product(range(q), repeat=len(free)):
            mat = [[0] * n for _ in range(k)]
            for i, pc in enumerate(piv):
                mat[i][pc] = 1
            for (i, j), v in zip(free, vals):
                mat[i][j] = v
            yield tuple(tuple(r) for r in mat)


def rref_matrices(k: int, n: int, q: int):
    """Every k×n matrix over F_q in reduced row echelon form with k nonzero rows."""
    return _rref_patterns(n, k, q)


class SubspaceLattice:
    """All subspaces of F_q^n with index-keyed structure tables."""

    def __init__(self, field: FieldSpec, n: int):
        size = lattice_size(n, field.q)
        if size > lattice_cap():
            raise LatticeTooLarge(f"L(F_{field.q}^{n}) has {size} subspaces (cap {lattice_cap()})")
        self.field = field
        self.n = n
        spaces = []
        for k in range(n + 1):
            spaces.extend(sorted(Subspace(n, rows) for rows in _rref_patterns(n, k, field.q)))
        self.spaces: list[Subspace] = spaces
        self.index_of: dict[Subspace, int] = {s: i for i, s in enumerate(spaces)}
        self.dims = np.array([s.dim for s in spaces], dtype=np.int64)
        self.dims.setflags(write=False)
        self.dim_buckets = [np.flatnonzero(self.dims == k) for k in range(n + 1)]

    def __repr__(self):
        return f"SubspaceLattice(F_{self.field.q}^{self.n}, {len(self)} subspaces)"

    def __len__(self):
        return len(self.spaces)

    def __iter__(self):
        return iter(self.spaces)

    def __getitem__(self, i) -> Subspace:
        return self.spaces[i]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.spaces) - 1

    @property
    def points(self) -> np.ndarray:
        return self.dim_buckets[1] if self.n >= 1 else np.array([], dtype=np.int64)

    def index(self, A: Subspace | str | Sequence) -> int:
        """Lattice index of a subspace given as Subspace, text, or rows."""
        if isinstance(A, str):
            A = self.parse(A)
        elif not isinstance(A, Subspace):
            A = rref(A, self.field, self.n)
        try:
            return self.index_of[A]
        except KeyError:
            raise SubspaceNotInLattice(f"{A} is not a subspace of F_{self.q}^{self.n}") from None

    def span_index(self, rows) -> int:
        return self.index_of[rref(rows, self.field, self.n)]

    def parse(self, text: str) -> Subspace:
        """Parse ``100,010`` style text (``0`` or empty for the zero space)."""
        text = text.strip().strip("<>").replace(" ", "")
        if text in ("", "0"):
            return Subspace(self.n, ())
        if text == "E":
            return self.spaces[self.top]
        rows = []
        for chunk in text.split(","):
            if len(chunk) != self.n or any(c not in _DIGITS[: self.q] for c in chunk.lower()):
                raise ParseError(f"bad subspace row {chunk!r} for F_{self.q}^{self.n}")
            rows.append([_DIGITS.index(c) for c in chunk.lower()])
        return rref(rows, self.field, self.n)

    def label(self, i: int) -> str:
        return self.spaces[i].text()

    # -- tables -------------------------------------------------------------

    @cached_property
    def point_masks(self) -> list[int]:
        """Bitmask over the points contained in each subspace."""
        field = self.field
        point_bit = {}
        for b, i in enumerate(self.points):
            point_bit[self.spaces[i].rows[0]] = 1 << b
        masks = []
        for s in self.spaces:
            mask = 0
            for v in span_vectors(s, field):
                lead = next((x for x in v if x), 0)
                if lead:
                    if lead != 1:
                        inv = field.inv(lead)
                        v = tuple(field.mul(inv, x) for x in v)
                    mask |= point_bit[v]
            masks.append(mask)
        return masks

    @cached_property
    def perp_table(self) -> np.ndarray:
        t = np.array([self.index_of[perp(s, self.field)] for s in self.spaces], dtype=np.int64)
        t.setflags(write=False)
        return t

    @cached_property
    def meet_table(self) -> np.ndarray:
        """meet_table[a, b] is the index of A ∩ B (point sets intersect exactly)."""
        masks = self.point_masks
        by_mask = {m: i for i, m in enumerate(masks)}
        L = len(masks)
        t = np.empty((L, L), dtype=np.int64)
        for a in range(L):
            ma = masks[a]
            t[a] = [by_mask[ma & mb] for mb in masks]
        t.setflags(write=False)
        return t

    @cached_property
    def join_table(self) -> np.ndarray:
        """A + B = (A^⊥ ∩ B^⊥)^⊥."""
        p = self.perp_table
        t = p[self.meet_table[np.ix_(p, p)]]
        t.setflags(write=False)
        return t

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[a, b] is True when A ⊆ B."""
        t = self.meet_table == np.arange(len(self))[:, None]
        t.setflags(write=False)
        return t

    @cached_property
    def upper_covers(self) -> list[np.ndarray]:
        leq, dims = self.leq, self.dims
        return [np.flatnonzero(leq[a] & (dims == dims[a] + 1)) for a in range(len(self))]

    @cached_property
    def lower_covers(self) -> list[np.ndarray]:
        leq, dims = self.leq, self.dims
        return [np.flatnonzero(leq[:, b] & (dims == dims[b] - 1)) for b in range(len(self))]

    @cached_property
    def cover_edges(self) -> list[tuple[int, int]]:
        return [(a, int(b)) for a in range(len(self)) for b in self.upper_covers[a]]

    @cached_property
    def down_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(ptr, idx) listing every X ⊆ A for each A, in CSR layout."""
        idx = [np.flatnonzero(self.leq[:, a]) for a in range(len(self))]
        ptr = np.zeros(len(self) + 1, dtype=np.int64)
        ptr[1:] = np.cumsum([len(x) for x in idx])
        return ptr, np.concatenate(idx).astype(np.int64)

    def below(self, a: int) -> np.ndarray:
        ptr, idx = self.down_csr
        return idx[ptr[a] : ptr[a + 1]]

    def above(self, a: int) -> np.ndarray:
        return np.flatnonzero(self.leq[a])

    # -- index-level operations -------------------------------------------

    def join_idx(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def meet_idx(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def perp_idx(self, a: int) -> int:
        return int(self.perp_table[a])

    def same_as(self, other: "SubspaceLattice") -> bool:
        return self is other or (self.field == other.field and self.n == other.n)


@lru_cache(maxsize=64)
def _cached_lattice(field: FieldSpec, n: int) -> SubspaceLattice:
    return SubspaceLattice(field, n)


def enumerate_lattice(field: FieldSpec, n: int) -> SubspaceLattice:
    """The (shared, cached) lattice of all subspaces of F_q^n."""
    if n < 0:
        raise OutOfRange("ambient dimension must be non-negative")
    size = lattice_size(n, field.q)
    if size > lattice_cap():
        raise LatticeTooLarge(f"L(F_{field.q}^{n}) has {size} subspaces (cap {lattice_cap()})")
    return _cached_lattice(field, n)


def lattice_for(q: int, n: int) -> SubspaceLattice:
    return enumerate_lattice(field_of_order(q), n)


def interval(lattice: SubspaceLattice, A: Subspace, B: Subspace) -> Iterator[Subspace]:
    """Subspaces X with A ⊆ X ⊆ B, in canonical order."""
    a, b = lattice.index(A), lattice.index(B)
    if not lattice.leq[a, b]:
        raise NotNested(f"{A} is not contained in {B}")
    for x in np.flatnonzero(lattice.leq[a] & lattice.leq[:, b]):
        yield lattice.spaces[x]


# -- lattice isomorphisms from GL(n, q) -----------------------------------

class LatticeIso:
    """An invertible n x n matrix acting on subspaces by A -> rref(A T)."""

    def __init__(self, matrix, field: FieldSpec):
        self.matrix = tuple(tuple(int(x) for x in r) for r in matrix)
        self.field = field
        self.n = len(self.matrix)
        if any(len(r) != self.n for r in self.matrix):
            raise ColumnCountMismatch("an isomorphism needs a square matrix")
        if matrix_rank(self.matrix, field) != self.n:
            raise SingularMatrix("matrix is not invertible")

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "LatticeIso":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def permutation(cls, field: FieldSpec, perm: Sequence[int]) -> "LatticeIso":
        """Coordinate permutation sending e_i to e_perm[i]."""
        n = len(perm)
        return cls([[int(perm[i] == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def random(cls, field: FieldSpec, n: int, rng: random.Random) -> "LatticeIso":
        while True:
            m = [[rng.randrange(field.q) for _ in range(n)] for _ in range(n)]
            if matrix_rank(m, field) == n:
                return cls(m, field)

    def __call__(self, A: Subspace) -> Subspace:
        return apply_iso(self, A)

    def __eq__(self, other):
        return isinstance(other, LatticeIso) and self.matrix == other.matrix and self.field == other.field

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LatticeIso({[''.join(_DIGITS[x] for x in r) for r in self.matrix]})"

    def compose(self, other: "LatticeIso") -> "LatticeIso":
        """self after other: A -> self(other(A)) is A (T_other T_self)."""
        return LatticeIso(mat_mul(other.matrix, self.matrix, self.field), self.field)

    def inverse(self) -> "LatticeIso":
        n, f = self.n, self.field
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.matrix)]
        red = _rref_rows(aug, f, 2 * n)
        return LatticeIso([r[n:] for r in red], f)

    def permutation_of(self, lattice: SubspaceLattice) -> np.ndarray:
        """perm[i] is the lattice index of T(space i)."""
        if lattice.n != self.n or lattice.field != self.field:
            raise MixedLattices("isomorphism and lattice disagree on F_q^n")
        perm = np.empty(len(lattice), dtype=np.int64)
        for i, s in enumerate(lattice.spaces):
            perm[i] = lattice.index_of[apply_iso(self, s)]
        return perm


def apply_iso(T: LatticeIso, A: Subspace) -> Subspace:
    if A.n != T.n:
        raise MixedLattices("isomorphism and subspace disagree on n")
    if not A.rows:
        return A
    return rref([vec_mat(r, T.matrix, T.field) for r in A.rows], T.field, A.n)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out
