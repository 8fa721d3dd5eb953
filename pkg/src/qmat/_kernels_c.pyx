# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the integer-table kernels in ``_kernels_py``."""

import numpy as np

from libc.stdint cimport int64_t


def r3_violations(const int64_t[::1] rank, const int64_t[:, ::1] join,
                  const int64_t[:, ::1] meet, Py_ssize_t limit=-1):
    cdef Py_ssize_t L = rank.shape[0]
    cdef Py_ssize_t a, b, found = 0
    cdef int64_t ra
    out = []
    for a in range(L):
        ra = rank[a]
        for b in range(a + 1, L):
            if rank[join[a, b]] + rank[meet[a, b]] > ra + rank[b]:
                out.append((a, b))
                found += 1
                if 0 <= limit <= found:
                    return out
    return out


def down_min(const int64_t[::1] values, const int64_t[::1] dims,
             const int64_t[::1] ptr, const int64_t[::1] idx):
    cdef Py_ssize_t L = dims.shape[0]
    cdef Py_ssize_t a, k
    cdef int64_t best, v, x
    out = np.empty(L, dtype=np.int64)
    cdef int64_t[::1] o = out
    for a in range(L):
        best = values[idx[ptr[a]]] - dims[idx[ptr[a]]]
        for k in range(ptr[a] + 1, ptr[a + 1]):
            x = idx[k]
            v = values[x] - dims[x]
            if v < best:
                best = v
        o[a] = dims[a] + best
    return out


def enumerate_tables(const int64_t[::1] dims,
                     const int64_t[::1] low_ptr, const int64_t[::1] low_idx,
                     const int64_t[::1] pair_ptr, const int64_t[::1] pair_a,
                     const int64_t[::1] pair_b, const int64_t[::1] pair_m,
                     Py_ssize_t limit=-1):
    cdef Py_ssize_t L = dims.shape[0]
    cdef Py_ssize_t i, k, found = 0
    cdef int64_t lo, hi, v, rv
    cdef bint ok
    r_arr = np.zeros(L, dtype=np.int64)
    hi_arr = np.zeros(L, dtype=np.int64)
    cdef int64_t[::1] r = r_arr
    cdef int64_t[::1] his = hi_arr
    tables = []
    if L == 1:
        return np.zeros((1, 1), dtype=np.int64)
    i = 1
    # r[i] holds the value currently tried at position i; his[i] its upper bound
    r[1] = -1
    lo = 0
    while i > 0:
        if r[i] < 0:
            lo = 0
            hi = dims[i]
            for k in range(low_ptr[i], low_ptr[i + 1]):
                rv = r[low_idx[k]]
                if rv > lo:
                    lo = rv
                if rv + 1 < hi:
                    hi = rv + 1
            his[i] = hi
            v = lo
        else:
            v = r[i] + 1
        ok = False
        while v <= his[i]:
            ok = True
            for k in range(pair_ptr[i], pair_ptr[i + 1]):
                if v + r[pair_m[k]] > r[pair_a[k]] + r[pair_b[k]]:
                    ok = False
                    break
            if ok:
                break
            v += 1
        if not ok:
            r[i] = -1
            i -= 1
            continue
        r[i] = v
        if i == L - 1:
            tables.append(r_arr.copy())
            found += 1
            if 0 <= limit <= found:
                break
        else:
            i += 1
            r[i] = -1
    if not tables:
        return np.zeros((0, L), dtype=np.int64)
    return np.array(tables, dtype=np.int64)
