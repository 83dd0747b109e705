"""Training loop: Adam with a stepped learning-rate decay, overlap loss.

A checkpoint directory holds ``model.pt`` (weights + config) and
``curve.csv`` (epoch, mean loss, mean training dice).  Runs are
deterministic given the config seed, within the framework's documented
limits (CPU kernels; no multi-worker data loading).
"""

from __future__ import annotations

from pathlib import Path

import torch
from torch.utils.data import DataLoader

from .data import PhantomDataset, read_manifest
from .loss import dice_loss, hard_dice
from .model import Backbone, BackboneConfig


def train(
    manifest_path,
    out_dir,
    cfg: BackboneConfig | None = None,
    target_dice: float | None = None,
) -> Path:
    """Train on the corpus listed in the manifest; returns the checkpoint dir.

    Stops early once the epoch's mean training dice reaches ``target_dice``
    (if given); otherwise runs ``cfg.epochs`` epochs.
    """
    if cfg is None:
        cfg = BackboneConfig()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    torch.manual_seed(cfg.seed)
    records = read_manifest(manifest_path)
    dataset = PhantomDataset(records)
    loader = DataLoader(
        dataset,
        batch_size=cfg.batch_size,
        shuffle=True,
        num_workers=0,
        generator=torch.Generator().manual_seed(cfg.seed),
    )

    model = Backbone(cfg)
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.lr)
    scheduler = torch.optim.lr_scheduler.StepLR(
        optimizer, step_size=cfg.lr_decay_every, gamma=1.0 / cfg.lr_decay_factor
    )

    curve = []
    model.train()
    for epoch in range(1, cfg.epochs + 1):
        losses = []
        dices = []
        for x, y in loader:
            optimizer.zero_grad()
            pred = model(x)
            loss = dice_loss(pred, y)
            loss.backward()
            optimizer.step()
            losses.append(float(loss.detach()))
            dices.append(hard_dice(pred.detach(), y))
        scheduler.step()
        mean_loss = sum(losses) / len(losses)
        mean_dice = sum(dices) / len(dices)
        curve.append((epoch, mean_loss, mean_dice))
        if target_dice is not None and mean_dice >= target_dice:
            break

    with open(out_dir / "curve.csv", "w") as fh:
        fh.write("epoch,loss,train_dice\n")
        for epoch, loss, d in curve:
            fh.write(f"{epoch},{loss:.6f},{d:.6f}\n")
    torch.save({"config": cfg.__dict__, "state_dict": model.state_dict()}, out_dir / "model.pt")
    return out_dir


def load_checkpoint(path) -> Backbone:
    payload = torch.load(Path(path) / "model.pt", weights_only=False)
    cfg = BackboneConfig(**payload["config"])
    model = Backbone(cfg)
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model
