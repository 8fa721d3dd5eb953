import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmat import kernels
from qmat.analysis import table_constraints
from qmat.lattice import lattice_for

BACKENDS = kernels.available_backends()


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


def test_compiled_backend_is_built():
    # the build compiles the extension; the fallback is only for broken installs
    assert "cython" in BACKENDS


def _brute_r3(rank, L):
    out = []
    for a in range(len(L)):
        for b in range(a + 1, len(L)):
            if rank[L.join_table[a, b]] + rank[L.meet_table[a, b]] > rank[a] + rank[b]:
                out.append((a, b))
    return out


def _brute_down_min(values, L):
    return np.array([
        L.dims[a] + min(values[x] - L.dims[x] for x in range(len(L)) if L.leq[x, a])
        for a in range(len(L))
    ])


@pytest.mark.parametrize("name", sorted(BACKENDS))
# F_3^2: rank 0 (1 table), rank 1 with at most one loop (5), rank 2 (1)
@pytest.mark.parametrize("q, n, count", [(2, 0, 1), (2, 1, 2), (2, 2, 6), (2, 3, 32), (3, 2, 7)])
def test_table_enumeration_counts(name, q, n, count):
    L = lattice_for(q, n)
    tables = BACKENDS[name].enumerate_tables(*table_constraints(L), -1)
    assert tables.shape == (count, len(L))


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_enumeration_limit(name):
    L = lattice_for(2, 3)
    assert len(BACKENDS[name].enumerate_tables(*table_constraints(L), 5)) == 5


@pytest.mark.parametrize("q, n", [(2, 2), (2, 3), (3, 2)])
def test_backends_enumerate_identically(q, n):
    L = lattice_for(q, n)
    results = [b.enumerate_tables(*table_constraints(L), -1) for b in BACKENDS.values()]
    for other in results[1:]:
        assert np.array_equal(results[0], other)


@given(st.lists(st.integers(-2, 4), min_size=16, max_size=16))
def test_r3_backends_agree_with_brute_force(values):
    L = lattice_for(2, 3)
    rank = np.array(values, dtype=np.int64)
    want = _brute_r3(rank, L)
    for b in BACKENDS.values():
        assert b.r3_violations(rank, L.join_table, L.meet_table, -1) == want
        assert b.r3_violations(rank, L.join_table, L.meet_table, 2) == want[:2]


@given(st.lists(st.integers(0, 5), min_size=16, max_size=16))
def test_down_min_backends_agree_with_brute_force(values):
    L = lattice_for(2, 3)
    v = np.array(values, dtype=np.int64)
    ptr, idx = L.down_csr
    want = _brute_down_min(v, L)
    for b in BACKENDS.values():
        assert np.array_equal(b.down_min(v, L.dims, ptr, idx), want)


def test_forced_fallback(monkeypatch):
    import importlib

    monkeypatch.setenv("QMAT_KERNELS", "python")
    reloaded = importlib.reload(kernels)
    try:
        assert reloaded.BACKEND == "python"
    finally:
        monkeypatch.delenv("QMAT_KERNELS")
        importlib.reload(kernels)
