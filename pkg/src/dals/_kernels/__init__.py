"""Hot-kernel backend selection.

The compiled extension is preferred; the NumPy fallback is used when it is
missing or when the environment variable DALS_PURE_PYTHON=1 is set.  Both
backends are deterministic, single-threaded, and produce bitwise-identical
results (see tests/test_kernels.py).
"""

from __future__ import annotations

import os

if os.environ.get("DALS_PURE_PYTHON") == "1":
    from . import _fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        from . import _fallback as _impl

        BACKEND = "python"

from ._fallback import StepConstants, prepare_step  # backend-independent

CURVATURE_CLAMP = 1.0

box_sum = _impl.box_sum
mask_edt = _impl.mask_edt
curvature = _impl.curvature
evolution_step = _impl.evolution_step

__all__ = [
    "BACKEND",
    "CURVATURE_CLAMP",
    "StepConstants",
    "prepare_step",
    "box_sum",
    "mask_edt",
    "curvature",
    "evolution_step",
]
