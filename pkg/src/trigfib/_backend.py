"""Selects the float-kernel implementation at import time.

The compiled extension is preferred; the pure-Python module is used when it
is missing.  :func:`use_backend` switches explicitly (tests and benchmarks).
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active: ModuleType = _BACKENDS.get("compiled", _pykernels)


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return _active.NAME


def use_backend(name: str) -> str:
    """Activate ``"compiled"`` or ``"python"``; returns the previous name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    previous = _active.NAME
    _active = _BACKENDS[name]
    return previous


def get_backend(name: str) -> ModuleType:
    return _BACKENDS[name]


def active() -> ModuleType:
    return _active
