"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
versions take over.  Set ``DLKH_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _pykernels

try:
    if os.environ.get("DLKH_PURE"):
        raise ImportError("pure kernels requested")
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

# coordinates beyond this risk int64 overflow in the orientation products
_COORD_LIMIT = 1 << 30
# larger matrix entries would not fit the int64 buffer
_ENTRY_LIMIT = 1 << 62


def diagonal(rows: Sequence[Sequence[int]], backend: str | None = None) -> list[int]:
    """Nonzero pivots of a diagonal form of an integer matrix."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    flat = [v for r in rows for v in r]
    use = backend or BACKEND
    fits = all(abs(v) < _ENTRY_LIMIT for v in flat)
    if use == "cython" and _compiled is not None and m and n and fits:
        ok, diag = _compiled.diagonalize(array("q", flat), m, n)
        if ok:
            return list(diag)
    return _pykernels.diagonalize(flat, m, n)[1]


def crossings(a: Sequence[int], b: Sequence[int], backend: str | None = None
              ) -> tuple[bool, list[tuple[int, int]]]:
    """Proper crossings between flat segment lists ``a`` and ``b``."""
    use = backend or BACKEND
    na, nb = len(a) // 4, len(b) // 4
    if use == "cython" and _compiled is not None:
        if all(abs(v) < _COORD_LIMIT for v in a) and all(abs(v) < _COORD_LIMIT for v in b):
            deg, pairs = _compiled.segment_crossings(array("q", a), na, array("q", b), nb)
            return deg, list(pairs)
    return _pykernels.segment_crossings(a, na, b, nb)
