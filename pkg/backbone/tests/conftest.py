"""Corpus helpers for backbone tests.

Synthetic corpora are written directly in the interchange format; the
end-to-end test additionally drives the segmentation engine through its CLI,
which is the only coupling between the two components.
"""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import numpy as np

from dals_backbone import KIND_MASK, KIND_SCALAR, write_field


def write_disk_corpus(out: Path, count: int, size: int = 64, seed: int = 5) -> Path:
    """Noisy bright-disk scenes with ground truth, plus a manifest."""
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    records = []
    for i in range(count):
        yy, xx = np.indices((size, size), dtype=float)
        cy, cx = rng.uniform(size * 0.3, size * 0.7, 2)
        r = rng.uniform(size * 0.11, size * 0.22)
        gt = np.hypot(xx - cx, yy - cy) <= r
        image = np.clip(
            np.where(gt, 0.75, 0.3) + rng.normal(0.0, 0.05, (size, size)), 0.0, 1.0
        )
        names = {"image": f"s{i}_image.dals", "gt": f"s{i}_gt.dals"}
        write_field(out / names["image"], image, KIND_SCALAR)
        write_field(out / names["gt"], gt.astype(float), KIND_MASK)
        records.append({"id": f"s{i}", **names})
    with open(out / "manifest.jsonl", "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return out / "manifest.jsonl"


def run_engine_cli(*args: str) -> str:
    """Invoke the segmentation engine CLI in a subprocess."""
    result = subprocess.run(
        [sys.executable, "-m", "dals.cli", *args], capture_output=True, text=True
    )
    if result.returncode != 0:
        raise RuntimeError(f"dals {' '.join(args)} failed: {result.stderr}")
    return result.stdout
