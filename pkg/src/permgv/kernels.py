"""Select the compiled kernels when available, else the numpy reference.

Set ``PERMGV_PURE_PYTHON=1`` to force the reference implementation.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("PERMGV_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _pykernels
    else:
        BACKEND = "compiled"
else:
    _impl = _pykernels

greedy_scan = _impl.greedy_scan
build_adjacency = _impl.build_adjacency
min_distance = _impl.min_distance

__all__ = ["BACKEND", "greedy_scan", "build_adjacency", "min_distance"]
