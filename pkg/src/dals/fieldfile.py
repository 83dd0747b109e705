"""Bit-exact binary serialization of 2D fields.

Layout (all integers little-endian):

    offset  size  content
    0       4     magic "DALS"
    4       4     version, uint32 = 1
    8       1     kind, uint8: 0 scalar, 1 probability, 2 signed distance, 3 mask
    9       4     height, uint32
    13      4     width, uint32
    17      4*h*w payload: IEEE-754 float32, row-major, no trailing bytes

Readers validate strictly and never repair: kind 1 payloads must lie in
[0, 1], kind 3 payloads must be exactly 0.0 or 1.0, and every payload must be
finite.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    InvalidHeader,
    KindConstraintViolation,
    TruncatedPayload,
    UnsupportedVersion,
)

__all__ = [
    "KIND_SCALAR",
    "KIND_PROBABILITY",
    "KIND_SDM",
    "KIND_MASK",
    "write_field",
    "read_field",
]

MAGIC = b"DALS"
VERSION = 1

KIND_SCALAR = 0
KIND_PROBABILITY = 1
KIND_SDM = 2
KIND_MASK = 3

_HEADER = struct.Struct("<4sIBII")
_KINDS = (KIND_SCALAR, KIND_PROBABILITY, KIND_SDM, KIND_MASK)


def _validate_payload(values: np.ndarray, kind: int, context: str) -> None:
    if not np.isfinite(values).all():
        raise KindConstraintViolation(f"{context}: payload contains non-finite values")
    if kind == KIND_PROBABILITY and (values.min() < 0.0 or values.max() > 1.0):
        raise KindConstraintViolation(f"{context}: probability payload outside [0, 1]")
    if kind == KIND_MASK and not np.isin(values, (0.0, 1.0)).all():
        raise KindConstraintViolation(f"{context}: mask payload must be 0.0 or 1.0")


def write_field(path, data, kind: int) -> None:
    """Serialize a 2D array (bool or float) to ``path`` with the given kind."""
    if kind not in _KINDS:
        raise KindConstraintViolation(f"unknown kind {kind}")
    arr = np.asarray(data)
    if arr.dtype == np.bool_:
        arr = arr.astype(np.float64)
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidHeader(f"expected a non-empty 2D array, got shape {arr.shape}")
    payload = arr.astype("<f4")
    _validate_payload(payload.astype(np.float64), kind, "write")
    h, w = arr.shape
    header = _HEADER.pack(MAGIC, VERSION, kind, h, w)
    Path(path).write_bytes(header + payload.tobytes())


def read_field(path) -> tuple[np.ndarray, int]:
    """Read a field file; returns ``(float64 array, kind)``.

    Raises BadMagic, UnsupportedVersion, KindConstraintViolation,
    TruncatedPayload, or InvalidHeader on any format violation.
    """
    raw = Path(path).read_bytes()
    if len(raw) < 4:
        raise TruncatedPayload("file shorter than the 4-byte magic")
    if raw[:4] != MAGIC:
        raise BadMagic(f"bad magic {raw[:4]!r}")
    if len(raw) < _HEADER.size:
        raise TruncatedPayload("incomplete header")
    _, version, kind, h, w = _HEADER.unpack_from(raw)
    if version != VERSION:
        raise UnsupportedVersion(f"unsupported version {version}")
    if kind not in _KINDS:
        raise KindConstraintViolation(f"unknown kind {kind}")
    if h == 0 or w == 0:
        raise InvalidHeader("zero height or width")
    expected = 4 * h * w
    payload = raw[_HEADER.size :]
    if len(payload) != expected:
        raise TruncatedPayload(f"expected {expected} payload bytes, found {len(payload)}")
    values = np.frombuffer(payload, dtype="<f4").reshape(h, w).astype(np.float64)
    _validate_payload(values, kind, "read")
    return values, kind
