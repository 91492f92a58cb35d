"""Kernel backend selection.

The compiled extension is preferred; the pure-Python twin is the fallback.
Set ``LINEAUT_PURE_KERNEL=1`` to force the fallback (useful for the kernel
benchmark and for debugging).
"""

import os

if os.environ.get("LINEAUT_PURE_KERNEL"):
    from . import _kernel_py as kernel

    KERNEL_BACKEND = "pure"
else:
    try:
        from . import _kernel as kernel  # type: ignore[no-redef]

        KERNEL_BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as kernel  # type: ignore[no-redef]

        KERNEL_BACKEND = "pure"
