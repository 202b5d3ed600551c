"""Kernel selection.

The compiled int64 kernel is used when it imports; otherwise, or when
``PARHIGGS_PURE`` is set to a non-empty value, the pure-Python kernel is
used.  The compiled kernel falls back per call on overflow, so results
are always exact.
"""
import os

from . import _pykernels

try:
    if os.environ.get("PARHIGGS_PURE"):
        raise ImportError("pure mode requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

py_convolve = _pykernels.convolve


def _checked_convolve(a, b):
    try:
        return _ckernels.convolve(a, b)
    except OverflowError:
        return _pykernels.convolve(a, b)


convolve = _checked_convolve if _ckernels is not None else py_convolve
