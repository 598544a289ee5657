"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``PCENTER_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

try:
    if os.environ.get("PCENTER_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _impl

    COMPILED = True
except ImportError:
    _impl = _fallback
    COMPILED = False


def backend() -> str:
    return "cython" if COMPILED else "python"


def bfs_distances(g, source: int, impl=None) -> list[int]:
    impl = impl or _impl
    indptr, indices = g.csr
    return impl.bfs_distances(indptr, indices, g.n, source)


def centered_failure(g, colors, active, num_colors: int, impl=None) -> list[int]:
    """Vertices of a component with no unique colour, or ``[]``.

    ``colors`` is a dense colour id per vertex, ``active`` a 0/1 flag per
    vertex selecting the induced subgraph to examine.
    """
    impl = impl or _impl
    indptr, indices = g.csr
    if impl is _fallback:
        return impl.centered_failure(indptr, indices, colors, active, num_colors)
    return impl.centered_failure(
        indptr, indices, np.asarray(colors, dtype=np.int32), active, num_colors
    )
