"""Kernel backend selection.

The hot loops (fiber scan, arrangement scan) exist twice: a numba @njit
version and a pure numpy/python fallback with identical contracts.  Set
CWSEARCH_BACKEND=numpy to force the fallback, CWSEARCH_BACKEND=numba to
require the jitted version; unset, numba is used when importable.
"""

import os

ENV_VAR = "CWSEARCH_BACKEND"


def _resolve() -> str:
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice in ("numpy", "python"):
        return "numpy"
    if choice == "numba":
        return "numba"
    if choice:
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _resolve()

if BACKEND == "numba":
    from . import _kernels_numba as kernels
else:
    from . import _kernels_numpy as kernels


def backend_name() -> str:
    return kernels.NAME
