"""Turn a per-pixel interior probability map into the contour's starting state.

Two products are derived from the same map: the initial signed distance map
(binarize at 0.5, then exact signed EDT) and the pair of per-pixel energy
weights.  The weights follow

    lambda1 = exp((2 - Y) / (1 + Y))        lambda2 = exp((1 + Y) / (2 - Y))

so confident background (Y -> 0) maximally penalizes labeling a pixel as
interior, confident foreground (Y -> 1) maximally penalizes exterior labeling,
and the two weights cross at Y = 0.5 with common value e.  Both denominators
stay >= 1 on [0, 1], and the exponential amplifies the usable range to
[e^(1/2), e^2].
"""

from __future__ import annotations

import numpy as np

from .energy import ParameterMaps
from .errors import DegenerateMask
from .fields import as_field
from .levelset import reinitialize

__all__ = ["clamp_probability", "prob_to_sdm", "lambda_maps"]


def clamp_probability(prob) -> np.ndarray:
    """Validate a probability map, clamping stray values into [0, 1].

    Upstream networks can emit 1 + 1e-7 from numeric error; clamping is safe
    because every consumer of the map is monotone in it.
    """
    return np.clip(as_field(prob), 0.0, 1.0)


def prob_to_sdm(prob) -> np.ndarray:
    """Initial signed distance map: exact distance to the interpolated
    0.5-isocontour of the probability map, positive where prob >= 0.5.

    Extracting the isocontour sub-pixel (rather than binarizing first) keeps
    the unit-gradient property of the result intact down to the contour; for
    a hard 0/1 map the isocontour degenerates to the mid-edge polyline and
    the result agrees with :func:`signed_distance_from_mask` up to grid
    quantization.

    Raises
    ------
    DegenerateMask
        If the map binarizes to a single region (the upstream localizer found
        nothing, or everything).
    """
    p = clamp_probability(prob)
    mask = p >= 0.5
    if mask.all() or not mask.any():
        raise DegenerateMask("probability map binarizes to a single region")
    return reinitialize(p - 0.5)


def lambda_maps(prob) -> ParameterMaps:
    """Per-pixel interior/exterior weight maps from a probability map.

    Swap-symmetric in Y -> 1 - Y, strictly monotone (lambda1 decreasing,
    lambda2 increasing), and bounded in [e^(1/2), e^2].
    """
    y = clamp_probability(prob)
    lam1 = np.exp((2.0 - y) / (1.0 + y))
    lam2 = np.exp((1.0 + y) / (2.0 - y))
    return ParameterMaps(lambda1=lam1, lambda2=lam2)
