"""Traversal kernels with a compiled core and a pure-Python fallback.

The Cython extension is preferred when importable; set
``BCCTRUST_KERNELS=python`` to force the fallback (useful for the
benchmark and for debugging). ``BACKEND`` names the active choice.
"""

import os

if os.environ.get("BCCTRUST_KERNELS") == "python":
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

bfs_distances = _impl.bfs_distances
brandes_betweenness = _impl.brandes_betweenness
adj_matvec = _impl.adj_matvec

__all__ = ["BACKEND", "bfs_distances", "brandes_betweenness", "adj_matvec"]
