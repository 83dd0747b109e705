"""Toy-scale encoder-decoder that learns lesion probability maps.

Interchange with the segmentation engine happens exclusively through the
binary field-file format and corpus manifests; no in-process state is
shared.
"""

from .fieldfile import (
    KIND_MASK,
    KIND_PROBABILITY,
    KIND_SCALAR,
    KIND_SDM,
    FieldFormatError,
    read_field,
    write_field,
)
from .infer import infer_field, infer_file
from .loss import dice_loss, hard_dice
from .model import Backbone, BackboneConfig, parameter_count
from .train import load_checkpoint, train

__version__ = "0.1.0"

__all__ = [
    "KIND_SCALAR",
    "KIND_PROBABILITY",
    "KIND_SDM",
    "KIND_MASK",
    "FieldFormatError",
    "read_field",
    "write_field",
    "infer_field",
    "infer_file",
    "dice_loss",
    "hard_dice",
    "Backbone",
    "BackboneConfig",
    "parameter_count",
    "load_checkpoint",
    "train",
]
