"""Kernel backend selection.

Every hot kernel in :mod:`entropia.kernels` ships in two flavours: a
numba ``@njit`` loop and a pure-numpy fallback.  The env var
``ENTROPIA_BACKEND`` picks one at import time:

* ``numba`` - require numba, fail loudly if it is missing
* ``numpy`` - force the fallback path
* unset / ``auto`` - numba when importable, numpy otherwise
"""

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False


def _resolve() -> str:
    requested = os.environ.get("ENTROPIA_BACKEND", "auto").strip().lower()
    if requested in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if requested == "numba":
        if not HAVE_NUMBA:
            raise ImportError("ENTROPIA_BACKEND=numba but numba is not importable")
        return "numba"
    if requested == "numpy":
        return "numpy"
    raise ValueError(f"ENTROPIA_BACKEND={requested!r}: expected 'numba', 'numpy' or 'auto'")


BACKEND = _resolve()
