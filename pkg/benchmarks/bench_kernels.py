"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from qmat.analysis import table_constraints
from qmat.construct import uniform
from qmat.gf import field_make
from qmat.kernels import available_backends
from qmat.lattice import lattice_for


def cases():
    L4 = lattice_for(2, 4)
    L5 = lattice_for(2, 5)
    M = uniform(2, 5, field_make(2))
    ptr4, idx4 = L4.down_csr
    ptr5, idx5 = L5.down_csr
    rng = np.random.default_rng(0)
    values5 = rng.integers(0, 4, size=len(L5)).astype(np.int64)
    tables3 = table_constraints(lattice_for(2, 3))
    tables_g3 = table_constraints(lattice_for(3, 3))
    return {
        "r3 scan, U25 (374 spaces)": lambda k: k.r3_violations(M.rank, L5.join_table, L5.meet_table, -1),
        "down-min, F_2^4": lambda k: k.down_min(L4.dims * 2, L4.dims, ptr4, idx4),
        "down-min, F_2^5": lambda k: k.down_min(values5, L5.dims, ptr5, idx5),
        "enumerate tables, F_2^3": lambda k: k.enumerate_tables(*tables3, -1),
        "enumerate tables, F_3^3": lambda k: k.enumerate_tables(*tables_g3, -1),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':32s}" + "".join(f"{n:>12s}" for n in names) + "     ratio")
    for label, fn in cases().items():
        times = {}
        results = {}
        for n in names:
            results[n] = fn(backends[n])
            number = 3
            times[n] = min(timeit.repeat(lambda: fn(backends[n]), number=number, repeat=args.repeat)) / number
        first = results[names[0]]
        for n in names[1:]:
            same = first == results[n] if isinstance(first, list) else np.array_equal(first, results[n])
            assert same, f"{label}: backends disagree"
        ratio = ""
        if "cython" in times:
            ratio = f"{times['python'] / times['cython']:8.1f}x"
        print(f"{label:32s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names) + "  " + ratio)


if __name__ == "__main__":
    main()
