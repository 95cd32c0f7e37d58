"""Backend selection for the frame scans.

The compiled extension is used when it imports; set ``MORSEFRAMES_PURE=1``
to force the pure-Python path.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKENDS = {"python": _pykernels}
try:
    from . import _ckernels

    BACKENDS["cython"] = _ckernels
except ImportError:
    pass

BACKEND = "cython" if "cython" in BACKENDS and not os.environ.get("MORSEFRAMES_PURE") else "python"
_impl = BACKENDS[BACKEND]


def _module(backend: str | None):
    if backend is None:
        return _impl
    try:
        return BACKENDS[backend]
    except KeyError:
        raise ValueError(f"unknown backend {backend!r}; available: {sorted(BACKENDS)}") from None


def reference_masks(W, backend: str | None = None) -> list[int]:
    return _module(backend).reference_masks(W)


def coreference_masks(W, backend: str | None = None) -> list[int]:
    return _module(backend).coreference_masks(W)
