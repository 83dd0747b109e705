"""8-bit PNG import/export, lossy by quantization, plus contour overlays."""

from __future__ import annotations

import numpy as np
from PIL import Image

from .fields import as_field

__all__ = ["import_png8", "export_png8", "export_overlay"]

OVERLAY_HALF_WIDTH = 0.7


def import_png8(path) -> np.ndarray:
    """Load a PNG as a grayscale field in [0, 1] (pixel value / 255)."""
    with Image.open(path) as img:
        gray = img.convert("L")
        return np.asarray(gray, dtype=np.float64) / 255.0


def export_png8(path, field) -> None:
    """Write a field as 8-bit grayscale: clamp to [0, 1], scale by 255, round."""
    f = np.clip(as_field(field), 0.0, 1.0)
    q = np.rint(f * 255.0).astype(np.uint8)
    Image.fromarray(q, mode="L").save(path, format="PNG")


def export_overlay(path, field, phi, color: tuple[int, int, int] = (255, 0, 0)) -> None:
    """Write an RGB PNG of the field with the zero-crossing band of ``phi``
    (pixels with ``|phi| < 0.7``) drawn in a solid color."""
    f = np.clip(as_field(field), 0.0, 1.0)
    p = as_field(phi)
    if f.shape != p.shape:
        raise ValueError(f"field/phi shapes differ: {f.shape} vs {p.shape}")
    gray = np.rint(f * 255.0).astype(np.uint8)
    rgb = np.stack([gray, gray, gray], axis=-1)
    rgb[np.abs(p) < OVERLAY_HALF_WIDTH] = np.asarray(color, dtype=np.uint8)
    Image.fromarray(rgb, mode="RGB").save(path, format="PNG")
