"""Segmentation quality metrics: overlap, boundary distance, boundary F-score.

Boundaries are foreground pixels with at least one background 4-neighbor
(pixels beyond the grid count as background), matching the half-pixel
convention of the distance transform.  All mask metrics are symmetric in
their arguments and translation invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptyMask, ShapeMismatch
from .fields import as_mask

__all__ = [
    "MetricsReport",
    "dice",
    "hausdorff",
    "boundf",
    "confidence_interval",
    "evaluate",
]


@dataclass(frozen=True)
class MetricsReport:
    dice: float
    hausdorff: float
    boundf: float

    def to_text(self) -> str:
        """Flat key-value rendering, one ``metric=value`` per line."""
        return (
            f"dice={self.dice:.6f}\n"
            f"hausdorff={self.hausdorff:.6f}\n"
            f"boundf={self.boundf:.6f}\n"
        )


def _check_pair(a, b):
    a = as_mask(a)
    b = as_mask(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"mask shapes differ: {a.shape} vs {b.shape}")
    return a, b


def _boundary(mask: np.ndarray) -> np.ndarray:
    p = np.pad(mask, 1, constant_values=False)
    interior = p[:-2, 1:-1] & p[2:, 1:-1] & p[1:-1, :-2] & p[1:-1, 2:]
    return mask & ~interior


def dice(a, b) -> float:
    """Overlap score ``2|A n B| / (|A| + |B|)``; two empty masks score 1."""
    a, b = _check_pair(a, b)
    na = int(a.sum())
    nb = int(b.sum())
    if na == 0 and nb == 0:
        return 1.0
    inter = int(np.logical_and(a, b).sum())
    return 2.0 * inter / (na + nb)


def hausdorff(a, b) -> float:
    """Symmetric max-min Euclidean distance between the two boundaries, in px.

    Raises
    ------
    EmptyMask
        If either mask has no foreground.
    """
    a, b = _check_pair(a, b)
    if not a.any() or not b.any():
        raise EmptyMask("hausdorff requires two non-empty masks")
    ba = _boundary(a)
    bb = _boundary(b)
    to_b = _kernels.mask_edt(bb)
    to_a = _kernels.mask_edt(ba)
    return float(max(to_b[ba].max(), to_a[bb].max()))


def boundf(a, b, tol: float = 2.0) -> float:
    """Boundary F-measure at pixel tolerance ``tol``.

    Precision is the fraction of a's boundary pixels within ``tol`` of b's
    boundary; recall is the symmetric fraction; F = 2PR/(P+R) (0 when both
    vanish).
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    a, b = _check_pair(a, b)
    if not a.any() or not b.any():
        raise EmptyMask("boundf requires two non-empty masks")
    ba = _boundary(a)
    bb = _boundary(b)
    to_b = _kernels.mask_edt(bb)
    to_a = _kernels.mask_edt(ba)
    precision = float((to_b[ba] <= tol).mean())
    recall = float((to_a[bb] <= tol).mean())
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def confidence_interval(samples) -> tuple[float, float]:
    """Mean and 95% normal-approximation half-width ``1.96 sd / sqrt(n)``.

    Uses the sample standard deviation (n-1 denominator); requires at least
    two samples.
    """
    x = np.asarray(samples, dtype=np.float64).ravel()
    if x.size < 2:
        raise ValueError("confidence interval requires at least 2 samples")
    return float(x.mean()), float(1.96 * x.std(ddof=1) / math.sqrt(x.size))


def evaluate(pred, gt, boundf_tol: float = 2.0) -> MetricsReport:
    """All three mask metrics for one prediction/reference pair."""
    return MetricsReport(
        dice=dice(pred, gt),
        hausdorff=hausdorff(pred, gt),
        boundf=boundf(pred, gt, boundf_tol),
    )
