"""Overlap loss for probability-map training."""

from __future__ import annotations

import torch

SMOOTH = 1e-6


def dice_loss(pred: torch.Tensor, target: torch.Tensor) -> torch.Tensor:
    """``1 - 2 sum(p*g) / (sum(p) + sum(g) + 1e-6)`` over the whole batch."""
    inter = (pred * target).sum()
    return 1.0 - 2.0 * inter / (pred.sum() + target.sum() + SMOOTH)


def hard_dice(pred: torch.Tensor, target: torch.Tensor, threshold: float = 0.5) -> float:
    """Binary overlap score of the thresholded prediction (diagnostic)."""
    p = pred >= threshold
    g = target >= threshold
    denom = int(p.sum()) + int(g.sum())
    if denom == 0:
        return 1.0
    return 2.0 * int((p & g).sum()) / denom
