"""q-matroids represented by matrices over extension fields, and the 4-circuit experiment."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from qmat.core import QMatroid, derive_families
from qmat.errors import DimensionMismatch, ElementInBaseField, MixedFields
from qmat.gf import FieldSpec, field_make, field_of_order
from qmat.lattice import enumerate_lattice, lattice_for, matrix_rank, rref_matrices

# The coordinate split of F_2^4 and the six other 2-spaces completing the two
# spreads through E1 and E2.  Each is the graph of an invertible 2×2 map.
NAMED_SPACES = {
    "E1": "1000,0100",
    "E2": "0010,0001",
    "A": "1010,0101",
    "B": "1011,0110",
    "C": "1001,0111",
    "D": "1011,0101",
    "F": "1001,0110",
    "G": "1010,0111",
}
SPREAD_ABC = ("E1", "E2", "A", "B", "C")
SPREAD_DFG = ("E1", "E2", "D", "F", "G")


@dataclass(frozen=True)
class RepMatrix:
    """A k×n matrix G over ext, read as representing a q-matroid on base^n."""

    base: FieldSpec
    ext: FieldSpec
    G: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.G)
        object.__setattr__(self, "G", rows)
        if self.base.p != self.ext.p or self.ext.m % self.base.m:
            raise MixedFields(f"{self.base!r} is not a subfield of {self.ext!r}")
        if not rows:
            raise DimensionMismatch("matrix has no rows")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("rows have different lengths")
        if len(rows) > n:
            raise DimensionMismatch(f"k={len(rows)} exceeds n={n}")
        if any(not 0 <= x < self.ext.q for r in rows for x in r):
            raise DimensionMismatch(f"entry outside {self.ext!r}")

    @property
    def k(self) -> int:
        return len(self.G)

    @property
    def n(self) -> int:
        return len(self.G[0])

    @property
    def m(self) -> int:
        return self.ext.m // self.base.m

    @classmethod
    def over(cls, q: int, m: int, G) -> "RepMatrix":
        base = field_of_order(q)
        return cls(base, field_make(base.p, base.m * m), G)


def from_matrix(rep: RepMatrix) -> QMatroid:
    """rank(A) = rank over ext of G·Y, Y a basis of A written as columns."""
    lattice = enumerate_lattice(rep.base, rep.n)
    ext = rep.ext
    embed = ext.embedding_from(rep.base)
    add, mul = ext.add, ext.mul
    ranks = []
    for s in lattice.spaces:
        prod = []
        for y in s.rows:
            col = []
            for g in rep.G:
                acc = 0
                for gj, yj in zip(g, y):
                    if yj:
                        acc = add(acc, mul(gj, embed[yj]))
                col.append(acc)
            prod.append(col)
        ranks.append(matrix_rank(prod, ext) if prod else 0)
    return QMatroid(lattice, ranks)


def block_matrix(ext: FieldSpec, alpha: int, beta: int) -> RepMatrix:
    """[1 α 0 0; 0 0 1 β] over ext, representing a q-matroid on F_2^4."""
    return RepMatrix(field_make(2), ext, ((1, alpha, 0, 0), (0, 0, 1, beta)))


def two_dim_circuits(M: QMatroid) -> list[int]:
    fam = derive_families(M)
    return [c for c in fam.circuits if M.lattice.dims[c] == 2]


# -- determinant profile --------------------------------------------------

@dataclass
class DeterminantProfile:
    alpha: int
    beta: int
    values: dict  # label -> ext element

    @property
    def vanishing(self) -> list[str]:
        return [k for k, v in self.values.items() if v == 0]

    @property
    def predicted_circuits(self) -> int:
        return 2 + len(self.vanishing)


def determinant_profile(ext: FieldSpec, alpha: int, beta: int) -> DeterminantProfile:
    """det(G·Y) for the six named 2-spaces, G = [1 α 0 0; 0 0 1 β]."""
    if ext.p != 2:
        raise MixedFields(f"{ext!r} does not have characteristic 2")
    for x in (alpha, beta):
        if x in (0, 1):
            raise ElementInBaseField(f"{ext.format(x)} lies in GF(2)")
    add, mul = ext.add, ext.mul
    ab = mul(alpha, beta)
    values = {
        "A": add(alpha, beta),
        "B": add(add(ab, alpha), 1),
        "C": add(add(ab, beta), 1),
        "D": add(add(ab, alpha), beta),
        "F": add(ab, 1),
        "G": add(add(alpha, beta), 1),
    }
    return DeterminantProfile(alpha, beta, values)


# -- the exhaustive search ------------------------------------------------

@dataclass
class NonrepReport:
    m_max: int
    counts: dict = field(default_factory=dict)  # m -> Counter of circuit counts
    mismatches: list = field(default_factory=list)  # (m, alpha, beta, predicted, actual)
    four_circuit_hits: list = field(default_factory=list)
    shape_m: list = field(default_factory=list)
    shape_checked: int = 0
    shape_violations: list = field(default_factory=list)

    @property
    def observed(self) -> set:
        return {c for cnt in self.counts.values() for c in cnt}

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.four_circuit_hits or self.shape_violations)

    def render(self) -> str:
        lines = [f"extension degrees 1..{self.m_max}"]
        for m, cnt in sorted(self.counts.items()):
            summary = ", ".join(f"{k} circuits: {v}" for k, v in sorted(cnt.items())) or "no pairs"
            lines.append(f"  m={m}: {summary}")
        lines.append(f"profile/construction mismatches: {len(self.mismatches)}")
        lines.append(f"pairs with 4 two-dim circuits: {len(self.four_circuit_hits)}")
        lines.append(
            f"block-shape check over m in {self.shape_m}: {self.shape_checked} matrices, "
            f"{len(self.shape_violations)} violations"
        )
        lines.append("bounded search: corroborates the trichotomy, it does not prove it")
        return "\n".join(lines)


def shape_check(ext: FieldSpec) -> tuple[int, list]:
    """Every loopless rank-2 representation on F_2^4 with circuits E1, E2 is [1 a 0 0; 0 0 1 b].

    Runs over all 2×4 RREF matrices over ext.  Returns (matches, violations).
    """
    L = lattice_for(2, 4)
    e1, e2 = L.index(NAMED_SPACES["E1"]), L.index(NAMED_SPACES["E2"])
    base = field_make(2)
    matched, bad = 0, []
    for G in rref_matrices(2, 4, ext.q):
        M = from_matrix(RepMatrix(base, ext, G))
        if M.rank_of_E != 2 or any(M.rank[p] == 0 for p in L.points):
            continue
        if M.rank[e1] != 1 or M.rank[e2] != 1:
            continue
        matched += 1
        (a0, a, z0, z1), (z2, z3, b0, b) = G
        if (a0, z0, z1, z2, z3, b0) != (1, 0, 0, 0, 0, 1) or a in (0, 1) or b in (0, 1):
            bad.append(G)
    return matched, bad


def nonrep_search(m_max: int = 6, shape_m_max: int = 3) -> NonrepReport:
    """Circuit counts of [1 α 0 0; 0 0 1 β] for all α, β ∉ GF(2), m ≤ m_max.

    Each count is computed twice: from the determinant profile and from the
    full q-matroid.  ``shape_m_max`` bounds the exhaustive block-shape check.
    """
    if m_max > 10:
        raise DimensionMismatch("m_max is capped at 10")
    report = NonrepReport(m_max)
    for m in range(1, m_max + 1):
        ext = field_make(2, m)
        cnt = Counter()
        for alpha, beta in itertools.product(range(2, ext.q), repeat=2):
            predicted = determinant_profile(ext, alpha, beta).predicted_circuits
            actual = len(two_dim_circuits(from_matrix(block_matrix(ext, alpha, beta))))
            cnt[actual] += 1
            if predicted != actual:
                report.mismatches.append((m, alpha, beta, predicted, actual))
            if actual == 4:
                report.four_circuit_hits.append((m, alpha, beta))
        report.counts[m] = cnt
    for m in range(1, min(m_max, shape_m_max) + 1):
        matched, bad = shape_check(field_make(2, m))
        report.shape_m.append(m)
        report.shape_checked += matched
        report.shape_violations.extend(bad)
    return report


# -- circuit-built variants on F_2^4 --------------------------------------

def spread_variant(labels) -> QMatroid:
    """Rank-2 q-matroid on F_2^4 with 2-dim circuits E1, E2 and the named extras.

    Every 3-space containing none of those 2-spaces is added as a circuit.
    """
    L = lattice_for(2, 4)
    two = sorted({L.index(NAMED_SPACES[x]) for x in ("E1", "E2", *labels)})
    three = [t for t in L.dim_buckets[3] if not any(L.leq[c, t] for c in two)]
    return QMatroid.from_circuits(L, two + [int(t) for t in three], name=f"{2 + len(labels)}-circuit")


def build_four_circuit_matroid() -> QMatroid:
    """Circuits E1, E2, A, B; C stays independent."""
    return spread_variant(("A", "B"))


def has_representation_up_to(M: QMatroid, m_max: int) -> list:
    """Block matrices over GF(2^m), m ≤ m_max, representing M exactly."""
    found = []
    for m in range(2, m_max + 1):
        ext = field_make(2, m)
        for alpha, beta in itertools.product(range(2, ext.q), repeat=2):
            if np.array_equal(from_matrix(block_matrix(ext, alpha, beta)).rank, M.rank):
                found.append((m, alpha, beta))
    return found
