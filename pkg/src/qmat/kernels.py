"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback is used.  Set ``QMAT_KERNELS=python`` to force the fallback.
"""

import os

from qmat import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("QMAT_KERNELS", "").lower() != "python":
    try:
        from qmat import _kernels_c as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py


def available_backends():
    out = {"python": _kernels_py}
    try:
        from qmat import _kernels_c

        out["cython"] = _kernels_c
    except ImportError:
        pass
    return out


r3_violations = _impl.r3_violations
down_min = _impl.down_min
enumerate_tables = _impl.enumerate_tables
