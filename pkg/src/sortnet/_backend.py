"""Select the compiled kernels when available, else the Python fallback.

Set ``SORTNET_PURE_PYTHON=1`` in the environment to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
hook_walk = _pykernels.hook_walk
eg_swaps = _pykernels.eg_swaps

if os.environ.get("SORTNET_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # pragma: no cover - depends on the build
        pass
    else:
        BACKEND = "cython"
        hook_walk = _ckernels.hook_walk
        eg_swaps = _ckernels.eg_swaps

__all__ = ["BACKEND", "hook_walk", "eg_swaps"]
