"""Backend selection for the hot spectrum kernel.

The compiled Cython extension is preferred when present; the numpy
implementation is the always-available fallback. OAMSCHMIDT_BACKEND
(auto|cython|python) overrides the choice at import time.
"""

from __future__ import annotations

import os

from . import numpy_backend

try:
    from . import _kernels as cython_backend
except ImportError:
    cython_backend = None


def _select(name):
    if name == "python":
        return numpy_backend
    if name == "cython":
        if cython_backend is None:
            raise ImportError(
                "OAMSCHMIDT_BACKEND=cython requested but the compiled extension is missing"
            )
        return cython_backend
    if name == "auto":
        return cython_backend if cython_backend is not None else numpy_backend
    raise ValueError(f"unknown backend {name!r}; expected auto, cython or python")


_active = _select(os.environ.get("OAMSCHMIDT_BACKEND", "auto"))


def get_backend(name=None):
    """The active kernel backend, or a specific one by name."""
    if name is None:
        return _active
    return _select(name)


def backend_name():
    return _active.NAME


def available_backends():
    names = ["python"]
    if cython_backend is not None:
        names.insert(0, "cython")
    return names
