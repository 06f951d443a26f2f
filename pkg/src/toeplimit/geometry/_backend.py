"""Select the compiled overlay kernels when available.

Set ``TOEPLIMIT_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

from . import _clipcore_py

kernels = _clipcore_py
BACKEND = "python"

if os.environ.get("TOEPLIMIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _clipcore as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        kernels = _compiled
        BACKEND = "cython"

__all__ = ["kernels", "BACKEND"]
