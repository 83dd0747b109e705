"""Reader/writer for the engine's binary field interchange format.

Implemented against the published layout (little-endian: magic "DALS",
uint32 version = 1, uint8 kind, uint32 height, uint32 width, then
height*width float32 values row-major, nothing trailing) rather than by
importing the engine: the file format is the component boundary.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"DALS"
VERSION = 1

KIND_SCALAR = 0
KIND_PROBABILITY = 1
KIND_SDM = 2
KIND_MASK = 3

_HEADER = struct.Struct("<4sIBII")


class FieldFormatError(ValueError):
    pass


def read_field(path) -> tuple[np.ndarray, int]:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FieldFormatError(f"{path}: file too short")
    magic, version, kind, h, w = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FieldFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FieldFormatError(f"{path}: unsupported version {version}")
    if h == 0 or w == 0:
        raise FieldFormatError(f"{path}: zero dimension")
    payload = raw[_HEADER.size :]
    if len(payload) != 4 * h * w:
        raise FieldFormatError(f"{path}: payload size mismatch")
    values = np.frombuffer(payload, dtype="<f4").reshape(h, w).astype(np.float64)
    if not np.isfinite(values).all():
        raise FieldFormatError(f"{path}: non-finite payload")
    return values, kind


def write_field(path, values, kind: int) -> None:
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise FieldFormatError(f"expected 2D array, got shape {arr.shape}")
    if kind == KIND_PROBABILITY:
        arr = np.clip(arr, 0.0, 1.0)
    h, w = arr.shape
    header = _HEADER.pack(MAGIC, VERSION, kind, h, w)
    Path(path).write_bytes(header + arr.astype("<f4").tobytes())
