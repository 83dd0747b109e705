"""Shared corpus builders for the test suite."""

from __future__ import annotations

import numpy as np

import dals

# Frozen acceptance corpora.  The eikonal corpus keeps lesions large and
# smooth enough that distance-map medial ridges (where any exact distance
# field has |grad phi| < 0.9 by geometry) stay outside the tested
# |phi| in [2, 6] region.  The refinement corpus adds an overlapping
# intermediate-intensity confounder: the regime where the prediction prior
# carries information the image statistics alone do not.
EIKONAL_SPEC = dict(size=128, radius_mean=20.0, radius_sd=2.5, boundary_amplitude=0.15)
REFINE_SPEC = dict(size=128, radius_mean=18.0, radius_sd=3.0)
CONFOUNDER_LEVEL = 0.68
CONFOUNDER_OVERLAP = 12.0


def eikonal_phantom(seed: int) -> dals.PhantomSample:
    return dals.generate(dals.PhantomSpec(seed=seed, **EIKONAL_SPEC))


def refinement_scene(seed: int):
    """Lesion phantom plus an adjacent same-ish-intensity confounder blob.

    Returns (image, gt, prob) where prob is the phantom's default corrupted
    probability map (blur 2, shift <= 3 px, flip rate 0.05) covering the
    lesion only.
    """
    spec = dals.PhantomSpec(seed=seed, **REFINE_SPEC)
    sample = dals.generate(spec)
    rng = np.random.Generator(np.random.Philox(seed + 10_000))
    n = spec.size
    yy, xx = np.indices((n, n), dtype=float)
    center = (n - 1) / 2.0
    r_lesion = np.sqrt(sample.gt.sum() / np.pi)
    r_conf = rng.uniform(9.0, 13.0)
    angle = rng.uniform(0.0, 2.0 * np.pi)
    d = r_lesion + r_conf - CONFOUNDER_OVERLAP
    cy = center + d * np.sin(angle)
    cx = center + d * np.cos(angle)
    conf = (np.hypot(xx - cx, yy - cy) <= r_conf) & ~sample.gt
    image = sample.image.copy()
    image[conf] = np.clip(
        CONFOUNDER_LEVEL + rng.normal(0.0, spec.noise_sd, int(conf.sum())), 0.0, 1.0
    )
    return image, sample.gt, sample.prob
