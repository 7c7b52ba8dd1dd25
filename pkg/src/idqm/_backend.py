"""Backend selection for the hot numeric kernels.

The package ships two implementations of each inner loop: a numba
``@njit`` version and a pure-numpy version.  Selection happens once at
import time via the ``IDQM_BACKEND`` environment variable:

    IDQM_BACKEND=numba   force numba (ImportError if unavailable)
    IDQM_BACKEND=numpy   force the pure-numpy fallback
    IDQM_BACKEND=auto    numba if importable, numpy otherwise (default)
"""

import os

_choice = os.environ.get("IDQM_BACKEND", "auto").lower()

if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"IDQM_BACKEND must be auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    USE_NUMBA = False
elif _choice == "numba":
    import numba  # noqa: F401  (fail loudly if forced but missing)

    USE_NUMBA = True
else:
    try:
        import numba  # noqa: F401

        USE_NUMBA = True
    except ImportError:
        USE_NUMBA = False


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
