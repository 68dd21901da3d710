"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``KNESER_LAB_PURE=1`` to
force the pure-Python implementation.  Both expose the same functions.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("KNESER_LAB_PURE"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND: str = _active.BACKEND
rref = _active.rref
schur_span = _active.schur_span
power_chain = _active.power_chain
binary_points = _active.binary_points
count_binary_points = _active.count_binary_points
scan_block = _active.scan_block
free_positions = _active.free_positions
closure_dfs = _active.closure_dfs
atom_sizes = _active.atom_sizes
