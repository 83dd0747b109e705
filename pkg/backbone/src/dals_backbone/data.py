"""Corpus access: manifest parsing and (image, mask) tensor pairs."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import torch
from torch.utils.data import Dataset

from .fieldfile import read_field


def read_manifest(path) -> list[dict]:
    """One JSON record per line; image/gt/prob paths are relative to the
    manifest's directory."""
    path = Path(path)
    records = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            for key in ("image", "gt", "prob"):
                if key in rec:
                    rec[key] = str(path.parent / rec[key])
            records.append(rec)
    if not records:
        raise ValueError(f"{path}: empty manifest")
    return records


class PhantomDataset(Dataset):
    """Image/ground-truth pairs from a phantom corpus manifest."""

    def __init__(self, records: list[dict]):
        self.records = records

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, idx: int):
        rec = self.records[idx]
        image, _ = read_field(rec["image"])
        gt, _ = read_field(rec["gt"])
        if image.shape != gt.shape:
            raise ValueError(f"{rec['id']}: image/gt shapes differ")
        x = torch.from_numpy(np.ascontiguousarray(image, dtype=np.float32))[None]
        y = torch.from_numpy(np.ascontiguousarray(gt, dtype=np.float32))[None]
        return x, y
