"""
Array front end over the per-sample kernels.

The compiled extension (``cam16._kernels``) is used when it imports; the
numpy implementation in ``cam16._kernels_py`` is the fallback. Setting
``CAM16_PURE_PYTHON=1`` forces the fallback.

Rows that the scalar API would reject (negative achromatic response,
unrepresentable correlates) come back as NaN rows instead of raising.
"""

from __future__ import annotations

import os
from types import ModuleType
from typing import NamedTuple

import numpy as np

from . import _kernels_py
from .core import ViewingConditions
from .legacy import legacy_achromatic_white


def _load_compiled() -> ModuleType | None:
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


_COMPILED = _load_compiled()

if _COMPILED is not None and not os.environ.get("CAM16_PURE_PYTHON"):
    _impl = _COMPILED
else:
    _impl = _kernels_py

BACKEND: str = _impl.NAME


def available_backends() -> list[str]:
    names = [_kernels_py.NAME]
    if _COMPILED is not None:
        names.insert(0, _COMPILED.NAME)
    return names


def get_backend(name: str | None = None) -> ModuleType:
    """Kernel module by name; ``None`` or ``"auto"`` gives the one selected at import."""
    if name in (None, "auto"):
        return _impl
    if name == _kernels_py.NAME:
        return _kernels_py
    if _COMPILED is not None and name == _COMPILED.NAME:
        return _COMPILED
    raise ValueError(f"backend {name!r} not available; have {available_backends()}")


def pack_params(vc: ViewingConditions) -> np.ndarray:
    return np.array(
        [
            *vc.d_rgb,
            vc.f_l,
            vc.f_l_root,
            vc.n_c,
            vc.n_cb,
            vc.n_bb,
            vc.a_w,
            vc.c,
            vc.c * vc.z,
            vc.chroma_scale,
            legacy_achromatic_white(vc),
        ],
        dtype=np.float64,
    )


class ForwardBatch(NamedTuple):
    J: np.ndarray
    C: np.ndarray
    h: np.ndarray
    Q: np.ndarray
    M: np.ndarray
    s: np.ndarray
    H: np.ndarray
    failed: int


def _as_rows(arr, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"{name} must have shape (N, 3), got {arr.shape}")
    return arr


def forward_batch(xyz, vc: ViewingConditions, backend: str | None = None) -> ForwardBatch:
    out, failed = get_backend(backend).forward(_as_rows(xyz, "xyz"), pack_params(vc))
    return ForwardBatch(*out.T, failed=failed)


def inverse_batch(J, C, h, vc: ViewingConditions, backend: str | None = None) -> tuple[np.ndarray, int]:
    """XYZ rows (N, 3) from lightness, chroma and hue angle arrays."""
    jch = np.column_stack([np.asarray(v, dtype=np.float64) for v in (J, C, h)])
    return get_backend(backend).inverse(jch, pack_params(vc))


def legacy_inverse_batch(J, C, h, vc: ViewingConditions, backend: str | None = None) -> tuple[np.ndarray, int]:
    jch = np.column_stack([np.asarray(v, dtype=np.float64) for v in (J, C, h)])
    return get_backend(backend).legacy_inverse(jch, pack_params(vc))
