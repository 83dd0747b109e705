"""Inference: image field file in, probability field file out."""

from __future__ import annotations

import numpy as np
import torch

from .fieldfile import KIND_PROBABILITY, read_field, write_field
from .model import Backbone


def infer_field(model: Backbone, image: np.ndarray) -> np.ndarray:
    """Forward one image; the output matches its shape with values in (0, 1)."""
    x = torch.from_numpy(np.ascontiguousarray(image, dtype=np.float32))[None, None]
    with torch.no_grad():
        prob = model(x)[0, 0].numpy().astype(np.float64)
    return np.clip(prob, 0.0, 1.0)


def infer_file(model: Backbone, image_path, out_path) -> None:
    image, _ = read_field(image_path)
    write_field(out_path, infer_field(model, image), KIND_PROBABILITY)
