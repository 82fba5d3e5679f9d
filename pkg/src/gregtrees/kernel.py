"""Statistics-kernel backend selection.

Prefers the compiled Cython kernel when it is built; falls back to the pure
Python twin otherwise.  Set ``GREGTREES_PURE=1`` to force the fallback (used
by the benchmark and by backend-parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("GREGTREES_PURE") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
tree_stats = _impl.tree_stats
