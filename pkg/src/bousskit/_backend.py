"""Kernel backend selection.

BOUSS_BACKEND=numpy forces the pure-numpy kernels; BOUSS_BACKEND=numba forces
the jit kernels (ImportError if numba is missing); unset or "auto" prefers
numba when importable.  BOUSS_THREADS caps numba's thread count.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_active = None


def _load_numba():
    from . import _kernels_numba
    threads = os.environ.get("BOUSS_THREADS")
    if threads:
        import numba
        numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))
    return _kernels_numba


def resolve_backend(name: str | None = None):
    """Return the kernel module for the requested or configured backend."""
    if name is None:
        name = os.environ.get("BOUSS_BACKEND", "auto").lower()
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        return _load_numba()
    if name == "auto":
        try:
            return _load_numba()
        except ImportError:
            return _kernels_numpy
    raise ValueError(f"unknown backend {name!r} (expected auto|numba|numpy)")


def get_backend():
    global _active
    if _active is None:
        _active = resolve_backend()
    return _active


def set_backend(name: str | None):
    """Override the process-wide backend (tests, benchmarks)."""
    global _active
    _active = None if name is None else resolve_backend(name)
    return get_backend()
