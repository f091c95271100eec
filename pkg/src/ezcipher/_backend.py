"""Kernel backend selection.

Prefers the compiled extension, falls back to the NumPy/Python kernels.
Set EZCIPHER_PURE_PYTHON=1 to force the fallback (used by the parity tests
and the benchmark).  Both backends are bit-identical by contract, so the
choice never affects results, only speed.
"""
from __future__ import annotations

import os

if os.environ.get("EZCIPHER_PURE_PYTHON"):
    from ezcipher import _purekernels as _impl

    BACKEND = "python"
else:
    try:
        from ezcipher import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from ezcipher import _purekernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"

trajectory = _impl.trajectory
keystream = _impl.keystream
encode_blocks = _impl.encode_blocks
decode_blocks = _impl.decode_blocks
local_maxima = _impl.local_maxima


def backend() -> str:
    """Name of the kernel backend in use: "compiled" or "python"."""
    return BACKEND
