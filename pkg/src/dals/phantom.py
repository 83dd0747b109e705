"""Seeded synthetic lesion phantoms and a localizer-output emulator.

Phantoms are star-convex blobs whose boundary radius is modulated by a small
number of cosine harmonics with a fixed 1/k^2 amplitude spectrum and random
phases, rasterized onto a grid with configurable contrast, an optional linear
intensity ramp across the lesion, and Gaussian pixel noise.  The companion
``corrupt`` operation degrades a ground-truth mask the way an imperfect
localizer network would: translate, blur, and blend with uniform noise.

All randomness flows through a counter-based Philox4x64-10 generator keyed by
the spec seed (via ``numpy.random.Philox``), with a fixed draw order:
radius (rejection sampling), harmonic magnitudes, harmonic phases, ramp
direction, pixel noise, probability-map shift, corruption child seed.  Equal
seeds therefore give bitwise-equal samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DegenerateMask
from .fields import as_mask

__all__ = [
    "PhantomSpec",
    "PhantomSample",
    "PRESETS",
    "preset_spec",
    "generate",
    "corrupt",
]

MIN_RADIUS = 2.0
FIT_MARGIN = 4.0

# Default corruption applied to the ground truth when building the bundled
# probability map: the regime a reasonably trained localizer lands in.
DEFAULT_BLUR_SD = 2.0
DEFAULT_FLIP_RATE = 0.05
DEFAULT_MAX_SHIFT = 3

# Lesion radius statistics (mean, sd in px) per imaging preset.
PRESETS: dict[str, tuple[float, float]] = {
    "brain-mr": (17.42, 9.516),
    "lung-ct": (15.15, 5.777),
    "liver-ct": (20.483, 10.37),
    "liver-mr": (5.459, 2.027),
}


@dataclass(frozen=True)
class PhantomSpec:
    size: int = 128
    radius_mean: float = 17.42
    radius_sd: float = 9.516
    boundary_harmonics: int = 5
    boundary_amplitude: float = 0.25
    fg_level: float = 0.8
    bg_level: float = 0.3
    noise_sd: float = 0.08
    inhomogeneity_slope: float = 0.15
    seed: int = 0

    def __post_init__(self) -> None:
        if self.size < 32:
            raise ValueError("grid size must be >= 32")
        if self.fg_level == self.bg_level:
            raise ValueError("foreground/background contrast must be non-zero")
        if not (0.0 <= self.boundary_amplitude < 1.0):
            raise ValueError("boundary amplitude must be in [0, 1)")
        if self.boundary_harmonics < 0:
            raise ValueError("harmonic count must be non-negative")
        if self.radius_sd < 0 or self.noise_sd < 0:
            raise ValueError("standard deviations must be non-negative")
        r_max = (self.size / 2.0 - FIT_MARGIN) / (1.0 + self.boundary_amplitude)
        if not (MIN_RADIUS <= self.radius_mean <= r_max):
            raise ValueError(
                f"radius_mean must lie in [{MIN_RADIUS}, {r_max:.2f}] "
                f"for size {self.size}"
            )


@dataclass(frozen=True)
class PhantomSample:
    image: np.ndarray
    gt: np.ndarray
    prob: np.ndarray


def preset_spec(name: str, size: int = 128, seed: int = 0, **overrides) -> PhantomSpec:
    """Spec for a named radius preset; extra keywords override any field."""
    try:
        mean, sd = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    kwargs = dict(size=size, radius_mean=mean, radius_sd=sd, seed=seed)
    kwargs.update(overrides)
    return PhantomSpec(**kwargs)


def _draw_radius(rng: np.random.Generator, spec: PhantomSpec) -> float:
    """Rejection-sample the radius from a symmetric truncation of the normal.

    Truncating at ``mean +- c`` with c chosen so the lesion both fits the grid
    (with margin) and stays above MIN_RADIUS keeps the expected radius exactly
    at ``radius_mean``.
    """
    r_max = (spec.size / 2.0 - FIT_MARGIN) / (1.0 + spec.boundary_amplitude)
    half = min(spec.radius_mean - MIN_RADIUS, r_max - spec.radius_mean)
    while True:
        r = rng.normal(spec.radius_mean, spec.radius_sd)
        if abs(r - spec.radius_mean) <= half:
            return float(r)


def generate(spec: PhantomSpec) -> PhantomSample:
    """Seeded phantom triple: image, ground-truth mask, corrupted probability map."""
    rng = np.random.Generator(np.random.Philox(spec.seed))
    n = spec.size

    radius = _draw_radius(rng, spec)
    k = spec.boundary_harmonics
    if k > 0 and spec.boundary_amplitude > 0:
        # Fixed 1/k^2 spectral decay with mild magnitude jitter keeps the
        # boundary wavy but smooth; the normalization pins the total radial
        # perturbation to boundary_amplitude * radius.
        mags = rng.uniform(0.5, 1.0, k) / np.arange(1, k + 1) ** 2
        amps = spec.boundary_amplitude * mags / mags.sum()
        phases = rng.uniform(0.0, 2.0 * np.pi, k)
    else:
        amps = np.zeros(0)
        phases = np.zeros(0)

    center = (n - 1) / 2.0
    yy, xx = np.indices((n, n), dtype=np.float64)
    dx = xx - center
    dy = yy - center
    rho = np.hypot(dx, dy)
    theta = np.arctan2(dy, dx)
    bound = np.full((n, n), radius)
    for i in range(amps.size):
        bound += radius * amps[i] * np.cos((i + 1) * theta + phases[i])
    gt = rho <= bound

    image = np.where(gt, spec.fg_level, spec.bg_level)
    if spec.inhomogeneity_slope != 0.0:
        angle = rng.uniform(0.0, 2.0 * np.pi)
        ramp = (dx * np.cos(angle) + dy * np.sin(angle)) / (2.0 * radius)
        image = image + spec.inhomogeneity_slope * ramp * gt
    if spec.noise_sd > 0:
        image = image + rng.normal(0.0, spec.noise_sd, (n, n))
    image = np.clip(image, 0.0, 1.0)

    shift = rng.integers(-DEFAULT_MAX_SHIFT, DEFAULT_MAX_SHIFT + 1, 2)
    child_seed = int(rng.integers(0, 2**63))
    # Blur scaled down for small lesions so the default corruption never
    # erases the foreground (a radius-2 lesion blurred at sd 2 would vanish).
    prob = corrupt(
        gt,
        blur_sd=min(DEFAULT_BLUR_SD, radius / 4.0),
        shift=(int(shift[0]), int(shift[1])),
        flip_rate=DEFAULT_FLIP_RATE,
        seed=child_seed,
    )
    return PhantomSample(image=image, gt=gt, prob=prob)


def _translate(mask: np.ndarray, dx: int, dy: int) -> np.ndarray:
    out = np.zeros_like(mask)
    h, w = mask.shape
    ys = slice(max(dy, 0), min(h + dy, h))
    xs = slice(max(dx, 0), min(w + dx, w))
    ys_src = slice(max(-dy, 0), min(h - dy, h))
    xs_src = slice(max(-dx, 0), min(w - dx, w))
    out[ys, xs] = mask[ys_src, xs_src]
    return out


def corrupt(gt, blur_sd: float, shift: tuple[int, int], flip_rate: float, seed: int) -> np.ndarray:
    """Emulate a localizer's probability map from a ground-truth mask.

    Translates the mask by ``shift = (dx, dy)`` pixels, Gaussian-blurs the
    indicator with ``blur_sd``, then blends with seeded uniform noise:
    ``p = (1 - flip_rate) * blurred + flip_rate * u``.  The blend perturbs
    decisions only where the blurred map is uncertain, so the corrupted map
    stays lesion-shaped; within the documented envelope (blur_sd <= 4,
    |shift| <= 5, flip_rate <= 0.2 on lesions of radius >= 8) it binarizes to
    a non-empty mask.

    Raises
    ------
    DegenerateMask
        If the corruption erased the foreground at threshold 0.5.
    """
    mask = as_mask(gt)
    if not mask.any():
        raise ValueError("ground-truth mask must be non-empty")
    if blur_sd < 0:
        raise ValueError("blur_sd must be non-negative")
    if not (0.0 <= flip_rate < 0.5):
        raise ValueError("flip_rate must lie in [0, 0.5)")
    dx, dy = shift
    if dx != int(dx) or dy != int(dy):
        raise ValueError("shift must be integer pixels")

    p = _translate(mask, int(dx), int(dy)).astype(np.float64)
    if blur_sd > 0:
        p = ndimage.gaussian_filter(p, blur_sd, mode="nearest")
    if flip_rate > 0:
        rng = np.random.Generator(np.random.Philox(seed))
        u = rng.uniform(0.0, 1.0, p.shape)
        p = (1.0 - flip_rate) * p + flip_rate * u
    p = np.clip(p, 0.0, 1.0)
    if not (p >= 0.5).any():
        raise DegenerateMask("corruption erased the foreground at threshold 0.5")
    return p
