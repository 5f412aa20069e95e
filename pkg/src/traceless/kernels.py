"""Kernel backend selection.

The compiled extension ``traceless._kernels`` is used when it imports; the
NumPy versions in ``traceless._kernels_py`` are the fallback.  Setting the
environment variable ``TRACELESS_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

PROPER = _kernels_py.PROPER
OVERLAP = _kernels_py.OVERLAP


def _load():
    if os.environ.get("TRACELESS_PURE", "") not in ("", "0"):
        return _kernels_py, "python"
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return _kernels_py, "python"
    return _kernels, "compiled"


_impl, BACKEND = _load()

segment_crossings = _impl.segment_crossings
poly2_eval = _impl.poly2_eval
bisect_edges = _impl.bisect_edges


def backends() -> dict:
    """Every importable backend by name, for benchmarks and equivalence tests."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        found["compiled"] = _kernels
    return found
