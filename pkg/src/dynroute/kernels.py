"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python twin when the
extension is not built.  Set DYNROUTE_PURE_PYTHON=1 to force the fallback.
Both lanes produce bit-identical results.
"""

from __future__ import annotations

import os

if os.environ.get("DYNROUTE_PURE_PYTHON") == "1":
    from . import _py_kernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _py_kernels as _impl

BACKEND = "compiled" if _impl.__name__.endswith("_ckernels") else "pure-python"

dynamic_dijkstra_arrays = _impl.dynamic_dijkstra_arrays
static_dijkstra_arrays = _impl.static_dijkstra_arrays
