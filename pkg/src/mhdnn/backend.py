"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
kernels are the fallback. MHDNN_BACKEND=native|python forces the choice
(native raises if the extension is missing). Both backends produce
bit-identical orbits.
"""

import os

from . import _kernels_py

_FORCED = os.environ.get("MHDNN_BACKEND", "").strip().lower()

if _FORCED == "python":
    kernels = _kernels_py
    BACKEND = "python"
elif _FORCED == "native":
    from . import _kernels as kernels  # ImportError here is intentional
    BACKEND = "native"
else:
    if _FORCED:
        raise ValueError(f"MHDNN_BACKEND must be 'native' or 'python', got {_FORCED!r}")
    try:
        from . import _kernels as kernels
        BACKEND = "native"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
