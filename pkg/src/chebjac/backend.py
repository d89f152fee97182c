"""Kernel backend selection: the compiled extension when importable, the
numpy fallback otherwise.  CHEBJAC_KERNELS=numpy|cython forces a choice."""

import os

from . import _kernels_np

try:
    from . import _kernels_cy
except ImportError:
    _kernels_cy = None

_BACKENDS = {"numpy": _kernels_np}
if _kernels_cy is not None:
    _BACKENDS["cython"] = _kernels_cy


def available_backends():
    return dict(_BACKENDS)


def _initial():
    forced = os.environ.get("CHEBJAC_KERNELS", "").strip().lower()
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(
                f"CHEBJAC_KERNELS={forced!r} but available backends are "
                f"{sorted(_BACKENDS)}"
            )
        return forced
    return "cython" if "cython" in _BACKENDS else "numpy"


_active_name = _initial()


def kernel_backend() -> str:
    """Name of the active kernel backend ('cython' or 'numpy')."""
    return _active_name


def set_kernel_backend(name: str) -> str:
    """Switch the active backend; returns the previous name."""
    global _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    previous = _active_name
    _active_name = name
    return previous


def kernels():
    return _BACKENDS[_active_name]
