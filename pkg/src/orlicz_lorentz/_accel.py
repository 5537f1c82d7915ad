"""Numba switch.

Hot kernels are written twice: a loop version compiled with numba and a
vectorized numpy version. ``ORLICZ_LORENTZ_NUMBA=0`` forces the numpy path;
the numpy path is also used when numba cannot be imported.
"""
import os
import warnings

_flag = os.environ.get("ORLICZ_LORENTZ_NUMBA", "1").strip().lower()
_requested = _flag not in ("0", "false", "no", "off")

try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    _numba_njit = None
    if _requested:
        warnings.warn("numba could not be imported; using numpy kernels")

USE_NUMBA = HAVE_NUMBA and _requested


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise a no-op decorator."""
    if HAVE_NUMBA:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func
