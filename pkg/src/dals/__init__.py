"""Level-set lesion segmentation driven by probability maps.

The pipeline refines a per-pixel interior-probability map into a precise
boundary: the map seeds a signed distance function and a pair of per-pixel
energy weights, a localized region energy is descended within a narrow band
around the contour, and the final state is mapped back to a probability map
and mask.
"""

from ._kernels import BACKEND as kernel_backend
from .energy import (
    LocalStats,
    ParameterMaps,
    energy_density,
    evolution_force,
    local_means,
    total_energy,
)
from .errors import (
    BadMagic,
    DalsError,
    DegenerateMask,
    DegenerateWindow,
    EmptyBand,
    EmptyMask,
    FieldFileError,
    InvalidHeader,
    KindConstraintViolation,
    ShapeMismatch,
    TruncatedPayload,
    UnsupportedVersion,
)
from .evolution import EvolutionConfig, SegmentationResult, evolve, sdm_to_probability, segment
from .fieldfile import (
    KIND_MASK,
    KIND_PROBABILITY,
    KIND_SCALAR,
    KIND_SDM,
    read_field,
    write_field,
)
from .fields import as_field, as_mask, normalize, resize_bilinear, threshold
from .levelset import (
    NarrowBand,
    curvature,
    extract_band,
    reinitialize,
    signed_distance_from_mask,
    smoothed_dirac,
    smoothed_heaviside,
    zero_crossings,
)
from .metrics import MetricsReport, boundf, confidence_interval, dice, evaluate, hausdorff
from .phantom import PRESETS, PhantomSample, PhantomSpec, corrupt, generate, preset_spec
from .png_io import export_overlay, export_png8, import_png8
from .transformer import clamp_probability, lambda_maps, prob_to_sdm

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "LocalStats",
    "ParameterMaps",
    "energy_density",
    "evolution_force",
    "local_means",
    "total_energy",
    "DalsError",
    "DegenerateMask",
    "DegenerateWindow",
    "EmptyBand",
    "EmptyMask",
    "ShapeMismatch",
    "FieldFileError",
    "BadMagic",
    "UnsupportedVersion",
    "KindConstraintViolation",
    "TruncatedPayload",
    "InvalidHeader",
    "EvolutionConfig",
    "SegmentationResult",
    "evolve",
    "sdm_to_probability",
    "segment",
    "KIND_SCALAR",
    "KIND_PROBABILITY",
    "KIND_SDM",
    "KIND_MASK",
    "read_field",
    "write_field",
    "as_field",
    "as_mask",
    "threshold",
    "normalize",
    "resize_bilinear",
    "NarrowBand",
    "smoothed_heaviside",
    "smoothed_dirac",
    "signed_distance_from_mask",
    "curvature",
    "extract_band",
    "zero_crossings",
    "reinitialize",
    "MetricsReport",
    "dice",
    "hausdorff",
    "boundf",
    "confidence_interval",
    "evaluate",
    "PhantomSpec",
    "PhantomSample",
    "PRESETS",
    "preset_spec",
    "generate",
    "corrupt",
    "import_png8",
    "export_png8",
    "export_overlay",
    "clamp_probability",
    "prob_to_sdm",
    "lambda_maps",
]
