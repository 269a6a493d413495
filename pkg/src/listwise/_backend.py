"""Pick the compiled kernels when importable, else the numpy fallback.

Set ``LISTWISE_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from listwise import _fallback

if os.environ.get("LISTWISE_PURE") == "1":
    kernels = _fallback
    BACKEND = "numpy"
else:
    try:
        from listwise import _kernels as kernels  # type: ignore[attr-defined,no-redef]
    except ImportError:
        kernels = _fallback
        BACKEND = "numpy"
    else:
        BACKEND = "cython"

__all__ = ["BACKEND", "kernels"]
