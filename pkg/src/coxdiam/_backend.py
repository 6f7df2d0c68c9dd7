"""Kernel backend selection.

Hot loops are written once as plain Python over numpy arrays and compiled
with numba when available.  Setting ``COXDIAM_BACKEND=numpy`` disables
compilation: the interpreted loops are replaced by vectorised numpy
versions where one exists, otherwise the loop runs uncompiled.
"""

import os

BACKEND = os.environ.get("COXDIAM_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ValueError(f"COXDIAM_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

if BACKEND == "numba":
    try:
        import numba
    except ImportError:  # pragma: no cover
        BACKEND = "numpy"

USE_NUMBA = BACKEND == "numba"


def njit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn
