"""Dense 2D scalar grids and elementary raster operations.

Conventions used everywhere in the package: arrays are row-major float64
indexed ``[row=y, col=x]``, pixel coordinates are integer centers with unit
spacing, and stencils extend the grid by replication at the borders.
"""

from __future__ import annotations

import numpy as np

__all__ = ["as_field", "as_mask", "threshold", "normalize", "resize_bilinear"]


def as_field(data) -> np.ndarray:
    """Coerce to a 2D float64 grid, rejecting NaN/Inf and empty shapes."""
    f = np.asarray(data, dtype=np.float64)
    if f.ndim != 2 or f.shape[0] < 1 or f.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2D field, got shape {f.shape}")
    if not np.isfinite(f).all():
        raise ValueError("field contains NaN or Inf")
    return f


def as_mask(data) -> np.ndarray:
    """Coerce to a 2D boolean mask; numeric input must be 0/1 valued."""
    m = np.asarray(data)
    if m.dtype != np.bool_:
        if not np.isin(m, (0, 1)).all():
            raise ValueError("mask values must be 0 or 1")
        m = m.astype(bool)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2D mask, got shape {m.shape}")
    return m


def threshold(field, t: float) -> np.ndarray:
    """Binarize a field: output is 1 exactly where ``field >= t``."""
    return as_field(field) >= t


def normalize(field) -> np.ndarray:
    """Affinely rescale a field to [0, 1]; a constant field maps to all zeros."""
    f = as_field(field)
    lo = f.min()
    hi = f.max()
    if hi == lo:
        return np.zeros_like(f)
    return (f - lo) / (hi - lo)


def resize_bilinear(field, height: int, width: int) -> np.ndarray:
    """Resample a field to ``(height, width)`` with corner-aligned bilinear interpolation.

    Corner alignment means output corners sample input corners exactly, so a
    same-shape resize is the identity and a constant field stays constant
    (the interpolation is evaluated in lerp form, which is exact for equal
    neighbor values).
    """
    if height < 2 or width < 2:
        raise ValueError("resize target must be at least 2x2")
    f = as_field(field)
    h, w = f.shape

    ys = np.linspace(0.0, h - 1.0, height)
    xs = np.linspace(0.0, w - 1.0, width)
    y0 = np.clip(np.floor(ys).astype(np.intp), 0, max(h - 2, 0))
    x0 = np.clip(np.floor(xs).astype(np.intp), 0, max(w - 2, 0))
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]

    a = f[np.ix_(y0, x0)]
    b = f[np.ix_(y0, x1)]
    c = f[np.ix_(y1, x0)]
    d = f[np.ix_(y1, x1)]
    top = a + fx * (b - a)
    bottom = c + fx * (d - c)
    return top + fy * (bottom - top)
