"""Selects the simplex step kernel at import time.

The compiled extension is preferred when present; the numpy fallback is used
otherwise.  Set CIRCTHETA_BACKEND=numpy (or =cython) to force a choice --
forcing cython without the built extension is an import error rather than a
silent fallback, so benchmarks cannot lie.
"""

import os

from . import _simplex_py

_forced = os.environ.get("CIRCTHETA_BACKEND", "").strip().lower()

if _forced == "numpy":
    kernel = _simplex_py
elif _forced == "cython":
    from . import _simplex_cy as kernel  # noqa: F401  (ImportError is the point)
elif _forced == "":
    try:
        from . import _simplex_cy as kernel
    except ImportError:
        kernel = _simplex_py
else:
    raise ImportError(f"unknown CIRCTHETA_BACKEND={_forced!r} (use 'numpy' or 'cython')")


def backend_name() -> str:
    return kernel.BACKEND_NAME
