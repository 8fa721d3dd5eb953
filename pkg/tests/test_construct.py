import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmat.analysis import all_rank_tables
from qmat.construct import (
    SubmodularFn,
    add_loop,
    circuits_from_submodular,
    coordinate_space,
    direct_sum,
    direct_sum_context,
    direct_sum_many,
    has_sum_minors,
    intersection,
    intersection_spanning_oracle,
    loop_space_of_sum,
    matroid_from_submodular,
    rank_min_over_all,
    uniform,
    union,
    union_independents_oracle,
)
from qmat.core import QMatroid, check_rank_axioms, contract, derive_families, dual, is_isomorphic, restrict
from qmat.errors import FlagsMissing, MixedFields, MixedLattices, OutOfRange
from qmat.gf import field_make
from qmat.lattice import lattice_for

F2 = field_make(2)
L2, L3 = lattice_for(2, 2), lattice_for(2, 3)
LABELLED2 = [QMatroid(L2, t) for t in all_rank_tables(L2)]
LABELLED3 = [QMatroid(L3, t) for t in all_rank_tables(L3)]


def loop_diamond(text):
    """Rank-1 q-matroid on F_2^2 whose only loop is <text>."""
    return QMatroid(L2, [0 if s.text() in ("0", text) else 1 for s in L2.spaces])


# -- uniform --

def test_uniform_small_cases():
    U01 = uniform(0, 1, F2)
    assert derive_families(U01).loops == [1]
    U23 = uniform(2, 3, F2)
    assert sorted(derive_families(U23).bases) == sorted(int(i) for i in L3.dim_buckets[2])
    with pytest.raises(OutOfRange):
        uniform(3, 2, F2)


@pytest.mark.parametrize("n", range(4))
def test_uniform_duals(n):
    for k in range(n + 1):
        assert dual(uniform(k, n, F2)) == uniform(n - k, n, F2)


# -- submodular functions --

def test_submodular_flags():
    f = SubmodularFn(L2, L2.dims)
    assert all(f.flags.values())
    g = SubmodularFn(L2, [1, 2, 0, 2, 3])
    assert not g.zero_at_zero and not g.increasing
    with pytest.raises(FlagsMissing):
        circuits_from_submodular(g)
    h = SubmodularFn(L2, [0, 1, 1, 1, 3])
    assert h.increasing and not h.submodular
    with pytest.raises(OutOfRange):
        SubmodularFn(L2, [0, 1])


def test_circuits_from_submodular_examples():
    assert circuits_from_submodular(SubmodularFn(L3, L3.dims)) == []
    u12 = uniform(1, 2, F2)
    assert circuits_from_submodular(SubmodularFn(L2, u12.rank)) == [L2.top]
    assert circuits_from_submodular(SubmodularFn(L2, u12.rank + u12.rank)) == []


def test_matroid_from_submodular_examples():
    assert matroid_from_submodular(SubmodularFn(L3, L3.dims)) == uniform(3, 3, F2)
    assert matroid_from_submodular(SubmodularFn(L3, np.zeros(16, dtype=int))) == uniform(0, 3, F2)
    M = loop_diamond("01")
    f = SubmodularFn(L2, M.rank + M.rank)
    assert matroid_from_submodular(f).rank_of_E == 1
    # the minimum at E is attained at the loop: 0 + 0 + 2 - 1
    ell = L2.index("01")
    assert f.values[ell] + L2.dims[L2.top] - L2.dims[ell] == 1
    with pytest.raises(FlagsMissing):
        matroid_from_submodular(SubmodularFn(L2, L2.dims + 1))


def test_min_over_subspaces_matches_min_over_all():
    for M1, M2 in itertools.product(LABELLED3[::5], repeat=2):
        f = SubmodularFn(L3, M1.rank + M2.rank)
        assert np.array_equal(rank_min_over_all(f), matroid_from_submodular(f).rank)


# -- union and intersection --

def test_union_with_zero_and_intersection_with_free():
    for M in LABELLED3:
        assert union(M, uniform(0, 3, F2)) == M
        assert intersection(M, uniform(3, 3, F2)) == M


def test_union_depends_on_loop_position():
    assert union(loop_diamond("01"), loop_diamond("01")).rank_of_E == 1
    assert union(loop_diamond("01"), loop_diamond("10")).rank_of_E == 2
    assert L2.index("01") not in union_independents_oracle(loop_diamond("01"), loop_diamond("01"))


def test_union_requires_same_lattice():
    with pytest.raises(MixedLattices):
        union(uniform(1, 2, F2), uniform(1, 3, F2))
    with pytest.raises(MixedFields):
        union(uniform(1, 2, F2), uniform(1, 2, field_make(3)))
    with pytest.raises(MixedLattices):
        intersection(uniform(1, 2, F2), uniform(1, 3, F2))


def test_oracle_on_free_matroids():
    U = uniform(2, 2, F2)
    assert union_independents_oracle(U, U) == list(range(len(L2)))


@pytest.mark.parametrize("M1, M2", list(itertools.product(LABELLED2, repeat=2)))
def test_union_and_intersection_against_oracles(M1, M2):
    U = union(M1, M2)
    assert derive_families(U).independent == union_independents_oracle(M1, M2)
    # independent in both parts implies independent in the union
    both = (M1.rank == L2.dims) & (M2.rank == L2.dims)
    assert (U.rank[both] == L2.dims[both]).all()
    I = intersection(M1, M2)
    assert check_rank_axioms(I).ok
    assert derive_families(I).spanning == intersection_spanning_oracle(M1, M2)
    for T in range(len(L2)):
        assert restrict(U, T) == union(restrict(M1, T), restrict(M2, T))
        assert contract(I, T) == intersection(contract(M1, T), contract(M2, T))


@given(st.sampled_from(LABELLED3), st.sampled_from(LABELLED3))
def test_union_bounds(M1, M2):
    U = union(M1, M2)
    assert check_rank_axioms(U).ok
    assert U == union(M2, M1)
    assert (U.rank >= np.maximum(M1.rank, M2.rank)).all()
    assert (U.rank <= np.minimum(M1.rank + M2.rank, L3.dims)).all()


# -- loops and direct sums --

def test_add_loop_examples(named):
    assert add_loop(named["U11"]) == named["mixed"].renamed(None)
    assert add_loop(uniform(0, 2, F2)) == uniform(0, 3, F2)
    assert add_loop(named["U12"], at=0) == named["P1"]
    with pytest.raises(OutOfRange):
        add_loop(named["U12"], at=3)


def test_add_loop_keeps_the_old_matroid(named):
    for name in ("U02", "mixed", "U12", "U22"):
        M = named[name]
        for at in range(3):
            N = add_loop(M, at=at)
            loop = coordinate_space(N.lattice, [at])
            assert N.r(loop) == 0
            assert is_isomorphic(contract(N, loop), M) is not None
            rest = coordinate_space(N.lattice, [i for i in range(3) if i != at])
            assert is_isomorphic(restrict(N, rest), M) is not None


def test_direct_sum_context(named):
    M1, M2 = named["U12"], named["mixed"]
    ctx = direct_sum_context(M1, M2)
    L = ctx.lattice
    assert L.perp_idx(ctx.E1) == ctx.E2
    assert is_isomorphic(restrict(ctx.M1_ext, ctx.E1), M1) is not None
    assert restrict(ctx.M1_ext, ctx.E2) == uniform(0, 2, F2)
    assert is_isomorphic(restrict(ctx.M2_ext, ctx.E2), M2) is not None
    assert restrict(ctx.M2_ext, ctx.E1) == uniform(0, 2, F2)
    S = direct_sum(M1, M2)
    assert derive_families(S).loopspace == loop_space_of_sum(ctx)


def test_direct_sum_errors(named):
    with pytest.raises(MixedFields):
        direct_sum(named["U11"], uniform(1, 1, field_make(3)))


def test_sum_with_empty_matroid(named):
    for name in ("U12", "P1", "mixed"):
        assert direct_sum(named[name], named["U00"]) == named[name].renamed(None)
        assert direct_sum(named["U00"], named[name]) == named[name].renamed(None)


def test_sums_of_uniforms_over_gf3():
    F3 = field_make(3)
    S = direct_sum(uniform(1, 1, F3), uniform(0, 1, F3))
    assert S.rank_of_E == 1
    assert has_sum_minors(S, uniform(1, 1, F3), uniform(0, 1, F3))


@pytest.mark.parametrize("names", list(itertools.product(["U01", "U11"], repeat=3)))
def test_sum_is_associative_on_small_cases(named, names):
    A, B, C = (named[x] for x in names)
    left = direct_sum(direct_sum(A, B), C)
    right = direct_sum(A, direct_sum(B, C))
    assert is_isomorphic(left, right) is not None
    assert direct_sum_many(A, B, C) == left


def test_sum_of_uniform_lines_has_the_right_minors(named):
    S = direct_sum(named["U12"], named["U12"])
    assert has_sum_minors(S, named["U12"], named["U12"])
    assert not has_sum_minors(S, named["U12"], named["U11"])
    assert not has_sum_minors(uniform(2, 4, F2), named["U12"], named["U12"])


def test_bare_intersections_of_spanning_spaces_are_not_enough():
    M = loop_diamond("01")
    spanning = np.flatnonzero(M.rank == 1)
    bare = set(L2.meet_table[np.ix_(spanning, spanning)].ravel().tolist())
    assert 0 in bare and L2.index("01") not in bare
    assert intersection(M, M).rank_of_E == 1
    assert intersection_spanning_oracle(M, M) == derive_families(intersection(M, M)).spanning
