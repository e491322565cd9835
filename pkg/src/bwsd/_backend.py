"""Kernel backend selection.

The hot loops (suffix sorting and the per-row sweeps of every engine) have
two interchangeable implementations: a Cython extension (bwsd._kernels)
and a pure-Python twin (bwsd._kernels_py).  The compiled one is preferred
when importable; set BWSD_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os

_impl = None


def _load():
    global _impl
    if _impl is not None:
        return _impl
    if not os.environ.get("BWSD_PURE"):
        try:
            from . import _kernels as impl

            _impl = impl
            return _impl
        except ImportError:
            pass
    from . import _kernels_py as impl

    _impl = impl
    return _impl


def backend():
    """The active kernel module."""
    return _load()


def backend_tag() -> str:
    """"c" when the compiled kernels are active, "py" otherwise."""
    return _load().TAG


def is_compiled() -> bool:
    return backend_tag() == "c"
