"""Pure Python / numpy kernels over lattice-indexed integer tables.

Every function here has a compiled twin in ``_kernels_c.pyx`` with the same
signature and the same output; ``qmat.kernels`` picks one at import time.
"""

import numpy as np


def r3_violations(rank, join, meet, limit=-1):
    """Pairs (a, b), a < b, with rank[a+b] + rank[a∩b] > rank[a] + rank[b]."""
    lhs = rank[join] + rank[meet]
    rhs = rank[:, None] + rank[None, :]
    bad = np.triu(lhs > rhs, k=1)
    pairs = [(int(a), int(b)) for a, b in np.argwhere(bad)]
    return pairs if limit < 0 else pairs[:limit]


def down_min(values, dims, ptr, idx):
    """out[A] = dim A + min over X ⊆ A of (values[X] - dim X)."""
    shifted = values[idx] - dims[idx]
    return dims + np.minimum.reduceat(shifted, ptr[:-1])


def enumerate_tables(dims, low_ptr, low_idx, pair_ptr, pair_a, pair_b, pair_m, limit=-1):
    """All rank tables satisfying the q-matroid axioms, by backtracking.

    Positions are filled in lattice order (by dimension).  Each value is kept
    within one of every lower cover's rank, and the submodular inequality is
    tested for each incomparable pair at the moment its join is assigned.
    """
    L = len(dims)
    if L == 1:
        return np.zeros((1, 1), dtype=np.int64)
    dims = [int(x) for x in dims]
    lows = [[int(x) for x in low_idx[low_ptr[i] : low_ptr[i + 1]]] for i in range(L)]
    pairs = [
        list(zip(pair_a[pair_ptr[i] : pair_ptr[i + 1]].tolist(),
                 pair_b[pair_ptr[i] : pair_ptr[i + 1]].tolist(),
                 pair_m[pair_ptr[i] : pair_ptr[i + 1]].tolist()))
        for i in range(L)
    ]
    r = [0] * L
    tables = []

    def candidates(i):
        lo, hi = 0, dims[i]
        for x in lows[i]:
            lo = max(lo, r[x])
            hi = min(hi, r[x] + 1)
        for v in range(lo, hi + 1):
            if all(v + r[m] <= r[a] + r[b] for a, b, m in pairs[i]):
                yield v

    stack = [candidates(1)]
    while stack:
        i = len(stack)
        v = next(stack[-1], None)
        if v is None:
            stack.pop()
            continue
        r[i] = v
        if i == L - 1:
            tables.append(list(r))
            if 0 <= limit <= len(tables):
                break
        else:
            stack.append(candidates(i + 1))
    if not tables:
        return np.zeros((0, L), dtype=np.int64)
    return np.array(tables, dtype=np.int64)
