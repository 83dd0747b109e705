"""Exception hierarchy shared by the whole package.

Every error carries a stable machine-readable ``code`` used by the CLI for
its ``error: <code>: <message>`` output and exit-status mapping.
"""

from __future__ import annotations

__all__ = [
    "DalsError",
    "DegenerateMask",
    "EmptyBand",
    "DegenerateWindow",
    "EmptyMask",
    "ShapeMismatch",
    "FieldFileError",
    "BadMagic",
    "UnsupportedVersion",
    "KindConstraintViolation",
    "TruncatedPayload",
    "InvalidHeader",
]


class DalsError(Exception):
    """Base class for domain errors with a stable error code."""

    code = "error"


class DegenerateMask(DalsError):
    """Mask (or a probability map at threshold 0.5) is all-foreground or all-background."""

    code = "degenerate-mask"


class EmptyBand(DalsError):
    """No pixel lies within the requested distance of the zero level set."""

    code = "empty-band"


class DegenerateWindow(DalsError):
    """A local statistics window is entirely on one side of the contour."""

    code = "degenerate-window"


class EmptyMask(DalsError):
    """A boundary-based metric received a mask with no foreground."""

    code = "empty-mask"


class ShapeMismatch(DalsError):
    """Two grids that must share a shape do not."""

    code = "shape-mismatch"


class FieldFileError(DalsError):
    """Base class for field-file format violations."""

    code = "field-file"


class BadMagic(FieldFileError):
    code = "bad-magic"


class UnsupportedVersion(FieldFileError):
    code = "unsupported-version"


class KindConstraintViolation(FieldFileError):
    code = "kind-constraint"


class TruncatedPayload(FieldFileError):
    code = "truncated-payload"


class InvalidHeader(FieldFileError):
    code = "invalid-header"
