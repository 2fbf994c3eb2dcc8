"""Integration kernel backends.

The compiled Cython kernel is preferred; the numpy reference implementation
is used when the extension was not built or when ``NETREPRO_FORCE_PY=1`` is
set (handy for the backend benchmark and for debugging).
"""

import os

from . import pyref

if os.environ.get("NETREPRO_FORCE_PY") == "1":
    _impl = pyref
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = pyref

BACKEND = _impl.BACKEND
KIND_SIS = pyref.KIND_SIS
KIND_SIR = pyref.KIND_SIR
rk4_run = _impl.rk4_run

__all__ = ["BACKEND", "KIND_SIS", "KIND_SIR", "rk4_run", "pyref"]
