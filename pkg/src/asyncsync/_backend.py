"""Kernel backend selection.

The hot inner loops (sequential decoder scan, stream synthesis, slotted MAP
accumulation) exist twice: once as numba @njit kernels and once as pure
numpy code. The active backend is chosen at import time from the
ASYNCSYNC_BACKEND environment variable:

    auto   use numba when it imports, numpy otherwise (default)
    numba  require numba, fail loudly if unavailable
    numpy  force the pure-numpy path

Both paths consume random numbers in the same per-symbol order, so results
are reproducible under either backend.
"""

import os
import warnings

_CHOICE = os.environ.get("ASYNCSYNC_BACKEND", "auto").strip().lower()

if _CHOICE not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"ASYNCSYNC_BACKEND must be one of auto/numba/numpy, got {_CHOICE!r}"
    )

USING_NUMBA = False
if _CHOICE in ("auto", "numba"):
    try:
        import numba  # noqa: F401

        USING_NUMBA = True
    except ImportError:
        if _CHOICE == "numba":
            raise RuntimeError("ASYNCSYNC_BACKEND=numba but numba is not importable")
        warnings.warn("numba unavailable, falling back to the numpy backend")


def backend_name() -> str:
    return "numba" if USING_NUMBA else "numpy"
