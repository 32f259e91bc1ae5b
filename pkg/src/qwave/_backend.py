"""Select the compute backend at import time.

The compiled extension qwave._kernels is used when it is importable; the
pure-Python twin qwave._kernels_py is the fallback.  Setting the environment
variable QWAVE_PURE_PYTHON=1 forces the fallback (useful for benchmarking
and for debugging the kernels).
"""

from __future__ import annotations

import os

if os.environ.get("QWAVE_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    """Name of the active kernel backend ("compiled" or "pure-python")."""
    return kernels.BACKEND_NAME
