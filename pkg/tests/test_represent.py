import itertools

import numpy as np
import pytest

from qmat.core import check_circuit_axioms, check_rank_axioms, derive_families, is_isomorphic
from qmat.errors import DimensionMismatch, ElementInBaseField, MixedFields
from qmat.gf import field_make
from qmat.lattice import lattice_for
from qmat.represent import (
    NAMED_SPACES,
    RepMatrix,
    block_matrix,
    build_four_circuit_matroid,
    determinant_profile,
    from_matrix,
    has_representation_up_to,
    nonrep_search,
    shape_check,
    spread_variant,
    two_dim_circuits,
)

F2 = field_make(2)
GF4, GF8, GF16 = field_make(2, 2), field_make(2, 3), field_make(2, 4)


def circuit_count(ext, alpha, beta):
    return len(two_dim_circuits(from_matrix(block_matrix(ext, alpha, beta))))


def test_repmatrix_validation():
    with pytest.raises(DimensionMismatch):
        RepMatrix(F2, GF8, [[1, 0], [0, 1], [1, 1]])
    with pytest.raises(DimensionMismatch):
        RepMatrix(F2, GF8, [[1, 0], [0]])
    with pytest.raises(DimensionMismatch):
        RepMatrix(F2, GF8, [[9, 0]])
    with pytest.raises(MixedFields):
        RepMatrix(field_make(3), GF8, [[1, 0]])
    rep = RepMatrix.over(2, 3, [[1, 2, 0, 0]])
    assert (rep.k, rep.n, rep.m) == (1, 4, 3)


def test_single_unit_column_gives_two_loops(named):
    M = from_matrix(RepMatrix(F2, F2, [[0, 0, 1]]))
    assert is_isomorphic(M, named["P2"]) is not None
    assert derive_families(M).loopspace.text() == "100,010"


def test_identity_matrix_is_free():
    for n in range(1, 4):
        G = [[int(i == j) for j in range(n)] for i in range(n)]
        M = from_matrix(RepMatrix(F2, GF4, G))
        assert (M.rank == M.lattice.dims).all()


def test_matrix_over_extension_is_uniform_when_generic():
    # a primitive element of GF(8) has coordinates independent over GF(2)
    M = from_matrix(RepMatrix(F2, GF8, [[1, 2, 4]]))
    assert (M.rank == np.minimum(M.lattice.dims, 1)).all()


def test_representable_matroids_pass_axioms():
    rng = np.random.default_rng(4)
    for _ in range(20):
        G = rng.integers(0, 16, size=(2, 3)).tolist()
        M = from_matrix(RepMatrix(F2, GF16, G))
        assert check_rank_axioms(M).ok


def test_determinant_profile_errors():
    with pytest.raises(ElementInBaseField):
        determinant_profile(GF8, 1, 2)
    with pytest.raises(MixedFields):
        determinant_profile(field_make(3, 2), 3, 4)


@pytest.mark.parametrize("ext", [GF4, GF8, GF16], ids=repr)
def test_profile_vanishing_comes_in_spreads(ext):
    for alpha, beta in itertools.product(range(2, ext.q), repeat=2):
        v = determinant_profile(ext, alpha, beta).values
        if v["A"] == 0 and v["B"] == 0:
            assert v["C"] == 0
        if v["D"] == 0 and v["F"] == 0:
            assert v["G"] == 0


@pytest.mark.parametrize("ext", [GF4, GF8, GF16], ids=repr)
def test_profile_matches_construction(ext):
    L = lattice_for(2, 4)
    for alpha, beta in itertools.product(range(2, ext.q), repeat=2):
        prof = determinant_profile(ext, alpha, beta)
        M = from_matrix(block_matrix(ext, alpha, beta))
        found = {L.label(c) for c in two_dim_circuits(M)}
        want = {NAMED_SPACES[k] for k in ["E1", "E2", *prof.vanishing]}
        assert found == want


def test_gf8_counts_for_the_three_exponents():
    a = 2
    assert [circuit_count(GF8, a, GF8.pow(a, e)) for e in (5, 3, 1)] == [3, 3, 3]
    # the vanishing determinants are D, G and A respectively
    assert [determinant_profile(GF8, a, GF8.pow(a, e)).vanishing for e in (5, 3, 1)] == [["D"], ["G"], ["A"]]


def test_two_and_five_circuit_matrices_exist():
    assert circuit_count(GF4, 2, 2) == 5
    assert circuit_count(GF16, 2, GF16.pow(2, 5)) == 2
    assert circuit_count(GF16, 2, GF16.pow(2, 3)) == 3


def test_search_on_small_degrees():
    report = nonrep_search(3, shape_m_max=2)
    assert report.counts[1] == {}
    assert report.observed <= {2, 3, 5}
    assert report.counts[2] == {5: 4}
    assert report.counts[3] == {3: 36}
    assert report.ok
    assert "corroborates" in report.render()
    with pytest.raises(DimensionMismatch):
        nonrep_search(11)


def test_shape_check_small_degree():
    matched, bad = shape_check(GF4)
    assert matched == 4
    assert bad == []


def test_four_circuit_matroid():
    M = build_four_circuit_matroid()
    assert check_rank_axioms(M).ok
    assert len(two_dim_circuits(M)) == 4
    assert check_circuit_axioms(M.lattice, derive_families(M).circuits).ok


@pytest.mark.slow
def test_four_circuit_matroid_has_no_block_representation():
    assert has_representation_up_to(build_four_circuit_matroid(), 6) == []


def test_two_circuit_variant_is_representable():
    M = spread_variant(())
    hits = has_representation_up_to(M, 4)
    assert hits and all(m == 4 for m, _, _ in hits)
