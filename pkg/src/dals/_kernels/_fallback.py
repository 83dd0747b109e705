"""Pure NumPy/SciPy implementations of the hot kernels.

Selected automatically when the compiled extension is unavailable (or when
DALS_PURE_PYTHON=1).  Both backends are written to produce bitwise-identical
fields: the summed-area table mirrors ``np.cumsum`` association, curvature
avoids ``pow`` in favor of a multiply/sqrt pair, both distance transforms are
exact (integer squared distances in float64), and the evolution step applies
identical per-pixel arithmetic (only the scalar energy reduction may differ
in the last ulps, pairwise vs sequential summation).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

CURVATURE_CLAMP = 1.0
_ETA = 1e-8
_MASS_FLOOR = 1e-6


def box_sum(a: np.ndarray, window: int) -> np.ndarray:
    """Sum of ``a`` over the odd ``window`` x ``window`` square centered at each
    pixel, with the window cropped (not padded) at the image borders."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    h, w = a.shape
    r = window // 2
    table = np.zeros((h + 1, w + 1), dtype=np.float64)
    np.cumsum(a, axis=0, out=table[1:, 1:])
    np.cumsum(table[1:, 1:], axis=1, out=table[1:, 1:])

    y = np.arange(h)
    x = np.arange(w)
    y0 = np.maximum(y - r, 0)
    y1 = np.minimum(y + r + 1, h)
    x0 = np.maximum(x - r, 0)
    x1 = np.minimum(x + r + 1, w)
    return (
        table[np.ix_(y1, x1)]
        - table[np.ix_(y0, x1)]
        - table[np.ix_(y1, x0)]
        + table[np.ix_(y0, x0)]
    )


def mask_edt(seeds: np.ndarray) -> np.ndarray:
    """Exact Euclidean distance from every pixel to the nearest True pixel."""
    seeds = np.ascontiguousarray(seeds, dtype=bool)
    if not seeds.any():
        return np.full(seeds.shape, np.inf)
    return ndimage.distance_transform_edt(~seeds)


def curvature(phi: np.ndarray) -> np.ndarray:
    """Divergence of the normalized gradient by central differences.

    kappa = (pxx*py^2 - 2*pxy*px*py + pyy*px^2) / (px^2 + py^2 + 1e-8)^(3/2),
    with replicated borders, clamped to +-1 per pixel of spacing.
    """
    phi = np.ascontiguousarray(phi, dtype=np.float64)
    p = np.pad(phi, 1, mode="edge")
    c = phi
    e = p[1:-1, 2:]
    w = p[1:-1, :-2]
    s = p[2:, 1:-1]
    n = p[:-2, 1:-1]
    se = p[2:, 2:]
    sw = p[2:, :-2]
    ne = p[:-2, 2:]
    nw = p[:-2, :-2]

    fx = 0.5 * (e - w)
    fy = 0.5 * (s - n)
    fxx = e - 2.0 * c + w
    fyy = s - 2.0 * c + n
    fxy = 0.25 * (se - sw - ne + nw)
    g2 = fx * fx + fy * fy + _ETA
    k = (fxx * fy * fy - 2.0 * fxy * fx * fy + fyy * fx * fx) / (g2 * np.sqrt(g2))
    return np.clip(k, -CURVATURE_CLAMP, CURVATURE_CLAMP)


@dataclass(frozen=True)
class StepConstants:
    """State that stays fixed while the contour evolves: the weight maps,
    their intensity products, and their window box sums."""

    image: np.ndarray
    lam1: np.ndarray
    lam2: np.ndarray
    lam1i: np.ndarray
    lam1ii: np.ndarray
    lam2i: np.ndarray
    lam2ii: np.ndarray
    count: np.ndarray  # clamped window pixel counts
    s_i: np.ndarray  # box(I)
    s_l2: np.ndarray
    s_l2i: np.ndarray
    s_l2ii: np.ndarray


def prepare_step(image, lam1, lam2, window: int) -> StepConstants:
    ii = image * image
    return StepConstants(
        image=image,
        lam1=lam1,
        lam2=lam2,
        lam1i=lam1 * image,
        lam1ii=lam1 * ii,
        lam2i=lam2 * image,
        lam2ii=lam2 * ii,
        count=box_sum(np.ones_like(image), window),
        s_i=box_sum(image, window),
        s_l2=box_sum(lam2, window),
        s_l2i=box_sum(lam2 * image, window),
        s_l2ii=box_sum(lam2 * ii, window),
    )


def _grad_mag(phi):
    p = np.pad(phi, 1, mode="edge")
    gx = 0.5 * (p[1:-1, 2:] - p[1:-1, :-2])
    gy = 0.5 * (p[2:, 1:-1] - p[:-2, 1:-1])
    return np.sqrt(gx * gx + gy * gy)


def evolution_step(phi, heav, delta, rows, cols, c: StepConstants, mu, dt, window):
    """One explicit Jacobi step of the band evolution.

    Returns ``(phi_new, energy)`` where the energy is the band energy of the
    *input* state, evaluated with the same window statistics that drive the
    force (the caller records it for the previous iteration).
    """
    image = c.image
    hi = heav * image
    w_in = box_sum(heav, window)
    bhi = box_sum(hi, window)
    w_out = c.count - w_in
    sum_h = heav.sum()
    sum_hi = hi.sum()
    m1g = sum_hi / sum_h
    m2g = (image.sum() - sum_hi) / (image.size - sum_h)
    m1 = np.where(w_in >= _MASS_FLOOR, bhi / np.maximum(w_in, _MASS_FLOOR), m1g)
    m2 = np.where(w_out >= _MASS_FLOOR, (c.s_i - bhi) / np.maximum(w_out, _MASS_FLOOR), m2g)

    b_l1h = box_sum(c.lam1 * heav, window)
    b_l1ih = box_sum(c.lam1i * heav, window)
    b_l1iih = box_sum(c.lam1ii * heav, window)
    b_l2h = box_sum(c.lam2 * heav, window)
    b_l2ih = box_sum(c.lam2i * heav, window)
    b_l2iih = box_sum(c.lam2ii * heav, window)
    s_term = (
        b_l1iih
        - 2.0 * m1 * b_l1ih
        + m1 * m1 * b_l1h
        + (c.s_l2ii - b_l2iih)
        - 2.0 * m2 * (c.s_l2i - b_l2ih)
        + m2 * m2 * (c.s_l2 - b_l2h)
    )
    vals = delta * (mu * _grad_mag(phi) + s_term)
    energy = float(vals[rows, cols].sum())

    d1 = image - m1
    d2 = image - m2
    r = c.lam1 * d1 * d1 - c.lam2 * d2 * d2
    update = delta * (mu * curvature(phi) - r)
    phi_new = phi.copy()
    phi_new[rows, cols] += dt * update[rows, cols]
    return phi_new, energy
