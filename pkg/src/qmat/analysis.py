"""Relations on 1-spaces, conjecture checks, spreads and the small-dimension catalogue."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from qmat import kernels
from qmat.construct import direct_sum, direct_sum_many, has_sum_minors, uniform, union
from qmat.core import (
    QMatroid,
    check_circuit_axioms,
    check_rank_axioms,
    derive_families,
    dual,
    is_isomorphic,
)
from qmat.errors import WrongAmbient
from qmat.gf import FieldSpec, field_make
from qmat.lattice import LatticeIso, SubspaceLattice, enumerate_lattice, lattice_for
from qmat.represent import (
    NAMED_SPACES,
    SPREAD_ABC,
    SPREAD_DFG,
    RepMatrix,
    from_matrix,
    spread_variant,
)


# -- relations on 1-spaces -----------------------------------------------

@dataclass
class RelationClasses:
    kind: str  # "circuit" or "hyperplane"
    lattice: SubspaceLattice
    points: list
    matrix: np.ndarray  # related[i, j] over self.points
    is_equivalence: bool
    witness: tuple | None  # (x, y, z) with x~y, y~z, x≁z
    classes: list | None

    @property
    def pairs(self) -> set:
        return {(self.points[i], self.points[j]) for i, j in np.argwhere(self.matrix)}

    def related(self, x, y) -> bool:
        i = self.points.index(self.lattice.index(x) if not isinstance(x, int) else x)
        j = self.points.index(self.lattice.index(y) if not isinstance(y, int) else y)
        return bool(self.matrix[i, j])

    def class_count(self) -> int | None:
        return None if self.classes is None else len(self.classes)


def _relation(kind: str, M: QMatroid, related: np.ndarray) -> RelationClasses:
    L = M.lattice
    pts = [int(p) for p in L.points]
    np.fill_diagonal(related, True)
    two_step = (related.astype(np.int64) @ related.astype(np.int64)) > 0
    broken = np.argwhere(two_step & ~related)
    witness = None
    if broken.size:
        x, z = broken[0]
        y = int(np.flatnonzero(related[x] & related[:, z])[0])
        witness = (pts[x], pts[y], pts[z])
    classes = None
    if witness is None:
        seen, classes = set(), []
        for i in range(len(pts)):
            if i not in seen:
                members = [int(j) for j in np.flatnonzero(related[i])]
                seen.update(members)
                classes.append([pts[j] for j in members])
    return RelationClasses(kind, L, pts, related, witness is None, witness, classes)


def circuit_relation(M: QMatroid) -> RelationClasses:
    """x ~ y when x = y or some circuit contains both."""
    L = M.lattice
    circ = derive_families(M).circuits
    inside = L.leq[np.ix_(L.points, circ)].astype(np.int64)
    return _relation("circuit", M, (inside @ inside.T) > 0)


def hyperplane_relation(M: QMatroid) -> RelationClasses:
    """x ~ y when x = y or some hyperplane contains neither."""
    L = M.lattice
    hyp = derive_families(M).hyperplanes
    outside = (~L.leq[np.ix_(L.points, hyp)]).astype(np.int64)
    return _relation("hyperplane", M, (outside @ outside.T) > 0)


@dataclass
class ConjectureFinding:
    name: str | None
    relation_ok: bool
    dual_relation_ok: bool
    meets_in_dim_one: list  # (circuit, cocircuit) pairs meeting in a 1-space

    @property
    def first_holds(self) -> bool:
        return self.relation_ok or self.dual_relation_ok

    @property
    def second_applies(self) -> bool:
        return not self.meets_in_dim_one

    @property
    def second_holds(self) -> bool:
        return not self.second_applies or self.relation_ok


@dataclass
class ConjectureReport:
    findings: list = field(default_factory=list)

    @property
    def first_counterexamples(self):
        return [f for f in self.findings if not f.first_holds]

    @property
    def second_counterexamples(self):
        return [f for f in self.findings if not f.second_holds]

    def render(self) -> str:
        lines = [f"checked {len(self.findings)} q-matroid(s)"]
        lines.append(
            "circuit relation transitive in M or M*: "
            f"{len(self.first_counterexamples)} counterexample(s)"
        )
        lines.append(
            "no circuit/cocircuit meet of dim 1 implies transitive: "
            f"{len(self.second_counterexamples)} counterexample(s)"
        )
        for f in self.first_counterexamples + self.second_counterexamples:
            lines.append(f"  counterexample: {f.name or '(unnamed)'}")
        return "\n".join(lines)


def circuit_cocircuit_meets(M: QMatroid) -> list[tuple[int, int]]:
    fam = derive_families(M)
    L = M.lattice
    return [
        (c, d)
        for c in fam.circuits
        for d in fam.cocircuits
        if L.dims[L.meet_table[c, d]] == 1
    ]


def conjecture_harness(Ms) -> ConjectureReport:
    """Evaluate both transitivity conjectures; counterexamples are recorded, not raised."""
    report = ConjectureReport()
    for M in Ms:
        report.findings.append(
            ConjectureFinding(
                M.name,
                circuit_relation(M).is_equivalence,
                circuit_relation(dual(M)).is_equivalence,
                circuit_cocircuit_meets(M),
            )
        )
    return report


# -- spreads in F_2^4 -----------------------------------------------------

@dataclass
class SpreadSet:
    lattice: SubspaceLattice
    members: list

    def is_spread(self) -> bool:
        L = self.lattice
        dims = {int(L.dims[m]) for m in self.members}
        if len(dims) != 1:
            return False
        for a, b in itertools.combinations(self.members, 2):
            if L.meet_table[a, b] != 0:
                return False
        covered = L.leq[np.ix_(L.points, self.members)].sum(axis=1)
        return bool((covered == 1).all())

    def uncovered_three_spaces(self) -> list[int]:
        """3-spaces containing no member; empty when every 3-space contains one."""
        L = self.lattice
        return [int(t) for t in L.dim_buckets[3] if not L.leq[self.members, t].any()]


def _require_f2_4(lattice: SubspaceLattice):
    if lattice.q != 2 or lattice.n != 4:
        raise WrongAmbient(f"spreads through E1, E2 need F_2^4, got F_{lattice.q}^{lattice.n}")


def standard_spreads(lattice: SubspaceLattice | None = None) -> tuple[SpreadSet, SpreadSet]:
    L = lattice or lattice_for(2, 4)
    _require_f2_4(L)
    return tuple(
        SpreadSet(L, [L.index(NAMED_SPACES[x]) for x in labels])
        for labels in (SPREAD_ABC, SPREAD_DFG)
    )


def spread_map(labels1=SPREAD_ABC, labels2=SPREAD_DFG) -> LatticeIso | None:
    """A change of basis of F_2^4 carrying one named spread onto the other.

    Each spread is the circuit family of a rank-2 q-matroid, so an
    isomorphism between those q-matroids maps spread onto spread.
    """
    def extra(labels):
        return [x for x in labels if x not in ("E1", "E2")]

    return is_isomorphic(spread_variant(extra(labels1)), spread_variant(extra(labels2)))


def two_circuits_meet_ok(M: QMatroid) -> bool:
    """No two 2-dim circuits meet in a 1-space."""
    L = M.lattice
    two = [c for c in derive_families(M).circuits if L.dims[c] == 2]
    return all(L.dims[L.meet_table[a, b]] != 1 for a, b in itertools.combinations(two, 2))


# -- non-uniqueness of the minor-based sum -------------------------------

@dataclass
class NonuniquenessReport:
    variants: list  # QMatroid per circuit count
    rank_ok: list
    circuit_ok: list
    minors_ok: list
    pairwise_nonisomorphic: bool
    two_circuit_is_sum: bool

    @property
    def ok(self) -> bool:
        return (
            all(self.rank_ok) and all(self.circuit_ok) and all(self.minors_ok)
            and self.pairwise_nonisomorphic and self.two_circuit_is_sum
        )

    def render(self) -> str:
        lines = []
        for M, r, c, m in zip(self.variants, self.rank_ok, self.circuit_ok, self.minors_ok):
            n2 = sum(1 for x in derive_families(M).circuits if M.lattice.dims[x] == 2)
            lines.append(
                f"{M.name}: {n2} two-dim circuits, rank axioms {'ok' if r else 'FAIL'}, "
                f"circuit axioms {'ok' if c else 'FAIL'}, minors {'ok' if m else 'FAIL'}"
            )
        lines.append(f"pairwise non-isomorphic: {self.pairwise_nonisomorphic}")
        lines.append(f"2-circuit variant equals U12 + U12: {self.two_circuit_is_sum}")
        return "\n".join(lines)


def nonuniqueness_demo() -> NonuniquenessReport:
    """Four q-matroids on F_2^4 with U12 and U12 as all four coordinate minors."""
    extras = [(), ("A",), ("A", "B"), ("A", "B", "C")]
    variants = [spread_variant(e) for e in extras]
    u12 = uniform(1, 2, field_make(2))
    rank_ok = [check_rank_axioms(M).ok for M in variants]
    circuit_ok = [
        check_circuit_axioms(M.lattice, derive_families(M).circuits).ok for M in variants
    ]
    minors_ok = [has_sum_minors(M, u12, u12) for M in variants]
    distinct = all(
        is_isomorphic(a, b) is None for a, b in itertools.combinations(variants, 2)
    )
    same = bool(np.array_equal(variants[0].rank, direct_sum(u12, u12).rank))
    return NonuniquenessReport(variants, rank_ok, circuit_ok, minors_ok, distinct, same)


# -- the catalogue --------------------------------------------------------

def table_constraints(lattice: SubspaceLattice):
    """Arrays consumed by ``kernels.enumerate_tables``.

    Lower covers in CSR form, and every incomparable pair (a, b, a∩b)
    grouped under the index of a+b.
    """
    n = len(lattice)
    lows = lattice.lower_covers
    low_ptr = np.zeros(n + 1, dtype=np.int64)
    low_ptr[1:] = np.cumsum([len(x) for x in lows])
    low_idx = np.concatenate([np.asarray(x, dtype=np.int64) for x in lows]) if n else np.zeros(0, np.int64)
    leq = lattice.leq
    incomparable = ~(leq | leq.T)
    a_idx, b_idx = np.nonzero(np.triu(incomparable, k=1))
    joins = lattice.join_table[a_idx, b_idx]
    order = np.argsort(joins, kind="stable")
    a_idx, b_idx, joins = a_idx[order], b_idx[order], joins[order]
    pair_ptr = np.searchsorted(joins, np.arange(n + 1)).astype(np.int64)
    pair_m = lattice.meet_table[a_idx, b_idx]
    return (
        lattice.dims.astype(np.int64),
        low_ptr,
        low_idx.astype(np.int64),
        pair_ptr,
        np.ascontiguousarray(a_idx, dtype=np.int64),
        np.ascontiguousarray(b_idx, dtype=np.int64),
        np.ascontiguousarray(pair_m, dtype=np.int64),
    )


def all_rank_tables(lattice: SubspaceLattice, limit: int = -1) -> np.ndarray:
    """Every rank table on the lattice satisfying the axioms (labelled, not up to isomorphism)."""
    return kernels.enumerate_tables(*table_constraints(lattice), limit)


def classify(Ms) -> list[QMatroid]:
    """One representative per isomorphism class, in first-seen order."""
    reps = []
    for M in Ms:
        if not any(is_isomorphic(M, R) is not None for R in reps):
            reps.append(M)
    return reps


def load_golden() -> dict:
    with resources.files("qmat").joinpath("data/catalogue.json").open() as fh:
        return json.load(fh)


def _rank_one_with_loopspace(L: SubspaceLattice, loopspace: str) -> QMatroid:
    ls = L.index(loopspace)
    return QMatroid(L, np.where(L.leq[:, ls], 0, np.minimum(L.dims, 1)))


def golden_matroids(field: FieldSpec | None = None) -> dict[str, QMatroid]:
    """The named small q-matroids in their catalogue coordinates."""
    f = field or field_make(2)
    out = {}
    for n in range(4):
        for k in range(n + 1):
            out[f"U{k}{n}"] = uniform(k, n, f).renamed(f"U{k}{n}")
    L2 = enumerate_lattice(f, 2)
    out["mixed"] = _rank_one_with_loopspace(L2, "01").renamed("mixed")
    L3 = enumerate_lattice(f, 3)
    out["P1"] = _rank_one_with_loopspace(L3, "100").renamed("P1")
    out["P2"] = _rank_one_with_loopspace(L3, "100,010").renamed("P2")
    out["P1*"] = dual(out["P1"]).renamed("P1*")
    out["P2*"] = dual(out["P2"]).renamed("P2*")
    return out


CATALOGUE_ORDER = {
    0: ["U00"],
    1: ["U01", "U11"],
    2: ["U02", "mixed", "U12", "U22"],
    3: ["U03", "U13", "P1", "P2", "P2*", "P1*", "U23", "U33"],
}


@dataclass
class CatalogueLevel:
    n: int
    tables: int
    classes: list  # QMatroid per class, named when matched


def generate_catalogue(field: FieldSpec, n_max: int) -> list[CatalogueLevel]:
    """Enumerate every q-matroid of dimension ≤ n_max up to isomorphism.

    Classes matching a named entry are returned in its coordinates under its
    name; any others keep their enumerated table.
    """
    named = golden_matroids(field) if n_max <= 3 else {}
    levels = []
    for n in range(n_max + 1):
        L = enumerate_lattice(field, n)
        tables = all_rank_tables(L)
        reps = classify(QMatroid(L, t) for t in tables)
        known = [named[k] for k in CATALOGUE_ORDER.get(n, []) if k in named]
        matched, rest = [], []
        for R in reps:
            hit = next((K for K in known if is_isomorphic(R, K) is not None), None)
            (matched if hit is not None else rest).append(hit if hit is not None else R)
        matched.sort(key=lambda K: CATALOGUE_ORDER[n].index(K.name))
        rest = [R.renamed(f"n{n}r{R.rank_of_E}_{i}") for i, R in enumerate(rest)]
        levels.append(CatalogueLevel(n, len(tables), matched + rest))
    return levels


def _expand(lattice: SubspaceLattice, tokens) -> list[int]:
    """Family tokens: a space text, 'dim:k' for all k-spaces, '!text' to exclude."""
    keep, drop = set(), set()
    for tok in tokens:
        if tok.startswith("dim:"):
            keep.update(int(i) for i in lattice.dim_buckets[int(tok[4:])])
        elif tok.startswith("!"):
            drop.add(lattice.index(tok[1:]))
        else:
            keep.add(lattice.index(tok))
    return sorted(keep - drop)


def verify_entry(M: QMatroid, entry: dict, named: dict[str, QMatroid]) -> list[str]:
    """Mismatches between M's derived data and a golden catalogue entry."""
    L = M.lattice
    fam = derive_families(M)
    problems = []
    if M.rank_of_E != entry["rank"]:
        problems.append(f"rank {M.rank_of_E} != {entry['rank']}")
    for key in ("independent", "bases", "circuits", "hyperplanes", "cocircuits"):
        if key in entry:
            want = _expand(L, entry[key])
            got = sorted(getattr(fam, key))
            if got != want:
                problems.append(
                    f"{key}: got {[L.label(i) for i in got]}, expected {[L.label(i) for i in want]}"
                )
    if "dual" in entry and is_isomorphic(dual(M), named[entry["dual"]]) is None:
        problems.append(f"dual is not {entry['dual']}")
    if entry.get("direct_sum"):
        parts = [named[x] for x in entry["direct_sum"]]
        if is_isomorphic(direct_sum_many(*parts), M) is None:
            problems.append(f"not isomorphic to {' + '.join(entry['direct_sum'])}")
    return problems


def verify_catalogue(levels: list[CatalogueLevel], golden: dict | None = None) -> dict[str, list[str]]:
    golden = golden or load_golden()
    named = golden_matroids()
    out = {}
    for level in levels:
        for M in level.classes:
            entry = golden["entries"].get(M.name)
            out[M.name] = ["no catalogue entry"] if entry is None else verify_entry(M, entry, named)
    return out


# -- random instances -----------------------------------------------------

def random_qmatroid(field: FieldSpec, n: int, rng) -> QMatroid:
    """A random valid q-matroid on field^n.

    Starts from a random matrix over a small extension field, then optionally
    dualises and takes a union with a rank-1 q-matroid on a random loopspace.
    ``rng`` is a ``random.Random``.
    """
    L = enumerate_lattice(field, n)
    if n == 0:
        return QMatroid(L, [0])
    ext = field_make(field.p, field.m * rng.randint(1, 3))
    k = rng.randint(1, n)
    G = [[rng.randrange(ext.q) for _ in range(n)] for _ in range(k)]
    M = from_matrix(RepMatrix(field, ext, G))
    if rng.random() < 0.5:
        M = dual(M)
    if rng.random() < 0.5:
        loops = L.spaces[rng.randrange(len(L) - 1)]
        M = union(M, _rank_one_with_loopspace(L, loops.text()))
    return M
