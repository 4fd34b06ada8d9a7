"""Selects the compiled search kernel when available.

Set RATSIMPLEX_PURE=1 to force the pure-Python twin; otherwise the compiled
extension is used when it imported cleanly.  Both expose the same
``search_clique`` contract and produce bit-identical results.
"""

from __future__ import annotations

import os

from . import _search_py

if os.environ.get("RATSIMPLEX_PURE"):
    _impl = _search_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _search_py

FOUND = _search_py.FOUND
EXHAUSTED = _search_py.EXHAUSTED
BUDGET = _search_py.BUDGET

search_clique = _impl.search_clique
BACKEND: str = _impl.BACKEND
